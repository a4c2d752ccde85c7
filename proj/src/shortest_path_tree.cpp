#include "dsoracle/shortest_path_tree.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

namespace dso {

SearchResult single_source(const Graph& g, Vertex source, Vertex blocked) {
  const Vertex n = g.num_vertices();
  if (!g.contains(source)) throw std::invalid_argument("single_source: source out of range");
  if (source == blocked) throw std::invalid_argument("single_source: source is blocked");
  SearchResult out;
  out.dist.assign(n, kInf);
  out.parent.assign(n, kNoVertex);
  out.dist[source] = 0;

  if (g.unweighted()) {
    std::deque<Vertex> queue{source};
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(u)) {
        if (nb.to == blocked || out.dist[nb.to] != kInf) continue;
        out.dist[nb.to] = out.dist[u] + 1;
        queue.push_back(nb.to);
      }
    }
  } else {
    using Item = std::pair<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != out.dist[u]) continue;
      for (const auto& nb : g.neighbors(u)) {
        if (nb.to == blocked) continue;
        Weight cand = d + nb.w;
        if (cand < out.dist[nb.to]) {
          out.dist[nb.to] = cand;
          heap.emplace(cand, nb.to);
        }
      }
    }
  }

  // Adjacency is sorted, so the first tight neighbor is the smallest id.
  out.parent[source] = source;
  for (Vertex v = 0; v < n; ++v) {
    if (v == source || out.dist[v] == kInf) continue;
    for (const auto& nb : g.neighbors(v)) {
      if (nb.to != blocked && out.dist[nb.to] + nb.w == out.dist[v]) {
        out.parent[v] = nb.to;
        break;
      }
    }
  }
  return out;
}

ShortestPathTree::ShortestPathTree(Vertex root, std::vector<Vertex> parent, std::vector<Weight> dist)
    : root_(root), parent_(std::move(parent)), dist_(std::move(dist)) {
  const Vertex n = static_cast<Vertex>(parent_.size());
  if (root < 0 || root >= n || dist_.size() != parent_.size() || parent_[root] != root) {
    throw std::invalid_argument("ShortestPathTree: malformed root/parent arrays");
  }
  children_.assign(n, {});
  for (Vertex v = 0; v < n; ++v) {
    if (v == root || parent_[v] == kNoVertex) continue;
    if (parent_[v] < 0 || parent_[v] >= n) throw std::invalid_argument("ShortestPathTree: bad parent");
    children_[parent_[v]].push_back(v);
  }

  level_.assign(n, -1);
  size_.assign(n, 0);
  tin_.assign(n, -1);
  tout_.assign(n, -1);

  // Levels via BFS order, then sizes bottom-up.
  std::vector<Vertex> bfs{root};
  level_[root] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    Vertex u = bfs[i];
    for (Vertex c : children_[u]) {
      if (level_[c] != -1) throw std::invalid_argument("ShortestPathTree: parent cycle");
      level_[c] = level_[u] + 1;
      bfs.push_back(c);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (parent_[v] != kNoVertex && level_[v] == -1) {
      throw std::invalid_argument("ShortestPathTree: vertex not connected to root");
    }
  }
  for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
    size_[*it] += 1;
    if (*it != root) size_[parent_[*it]] += size_[*it];
    height_ = std::max(height_, level_[*it]);
  }
  for (auto& ch : children_) {
    std::sort(ch.begin(), ch.end(), [this](Vertex a, Vertex b) {
      return size_[a] != size_[b] ? size_[a] > size_[b] : a < b;
    });
    if (ch.size() > 2) std::sort(ch.begin() + 1, ch.end());
  }

  order_.reserve(bfs.size());
  std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
  tin_[root] = 0;
  order_.push_back(root);
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    if (next < children_[u].size()) {
      Vertex c = children_[u][next++];
      tin_[c] = static_cast<std::int32_t>(order_.size());
      order_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      tout_[u] = tin_[u] + size_[u] - 1;
      stack.pop_back();
    }
  }

  const std::size_t m = order_.size();
  sparse_.assign(1, order_);
  for (std::size_t j = 1; (std::size_t{1} << j) <= m; ++j) {
    const auto& prev = sparse_[j - 1];
    std::vector<Vertex> cur(m - (std::size_t{1} << j) + 1);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      Vertex a = prev[i];
      Vertex b = prev[i + (std::size_t{1} << (j - 1))];
      cur[i] = level_[a] <= level_[b] ? a : b;
    }
    sparse_.push_back(std::move(cur));
  }
}

Vertex ShortestPathTree::lca(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= size() || v >= size() || !reachable(u) || !reachable(v)) {
    throw std::invalid_argument("lca: unreachable or invalid vertex");
  }
  if (is_ancestor(u, v)) return u;
  if (is_ancestor(v, u)) return v;
  std::int32_t lo = std::min(tin_[u], tin_[v]) + 1;
  std::int32_t hi = std::max(tin_[u], tin_[v]);
  std::size_t span = static_cast<std::size_t>(hi - lo + 1);
  int j = std::bit_width(span) - 1;
  Vertex a = sparse_[j][lo];
  Vertex b = sparse_[j][hi - (1 << j) + 1];
  return parent_[level_[a] <= level_[b] ? a : b];
}

Path ShortestPathTree::tree_path(Vertex v) const {
  if (v < 0 || v >= size() || !reachable(v)) {
    throw std::invalid_argument("tree_path: unreachable vertex " + std::to_string(v));
  }
  Path p;
  p.vertices.resize(static_cast<std::size_t>(level_[v]) + 1);
  for (Vertex u = v;; u = parent_[u]) {
    p.vertices[level_[u]] = u;
    if (u == root_) break;
  }
  p.length = dist_[v];
  return p;
}

void ShortestPathTree::append_descent(Vertex ancestor, Vertex v, std::vector<Vertex>& out) const {
  const std::size_t base = out.size();
  const std::int32_t steps = level_[v] - level_[ancestor];
  out.resize(base + static_cast<std::size_t>(steps));
  Vertex u = v;
  for (std::int32_t i = steps - 1; i >= 0; --i, u = parent_[u]) out[base + i] = u;
}

ShortestPathTree shortest_path_tree(const Graph& g, Vertex root) {
  if (!g.contains(root)) throw std::invalid_argument("shortest_path_tree: root out of range");
  auto sr = single_source(g, root);
  return ShortestPathTree(root, std::move(sr.parent), std::move(sr.dist));
}

}  // namespace dso
