#include "dsoracle/sssp3.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace dso {

PathDecomposition decompose_tree(const ShortestPathTree& t) {
  PathDecomposition d;
  const Vertex n = t.size();
  d.path_of_.assign(n, -1);
  d.position_.assign(n, -1);
  if (n == 0) return d;
  // Heads in preorder: the root, then every light child.
  for (std::int32_t i = 0; i < t.num_reachable(); ++i) {
    Vertex head = t.at_preorder(i);
    if (head != t.root() && t.heavy_child(t.parent(head)) == head) continue;
    DecompositionPath path;
    path.depth = head == t.root() ? 0 : d.paths_[d.path_of_[t.parent(head)]].depth + 1;
    for (Vertex v = head; v != kNoVertex; v = t.heavy_child(v)) {
      d.path_of_[v] = static_cast<std::int32_t>(d.paths_.size());
      d.position_[v] = static_cast<std::int32_t>(path.vertices.size());
      path.vertices.push_back(v);
    }
    d.max_depth_ = std::max(d.max_depth_, path.depth);
    d.paths_.push_back(std::move(path));
  }
  return d;
}

std::span<const Vertex> hanging_roots(const ShortestPathTree& t, Vertex v) {
  const auto& ch = t.children(v);
  if (ch.empty()) return {};
  return {ch.data() + 1, ch.size() - 1};
}

std::vector<SideTreeNode> grow_side_tree(const Graph& g, const ShortestPathTree& t,
                                         const FailureRecord& record, const DownEstimate& down) {
  const Vertex x = record.failed;
  const std::int32_t begin = record.side_begin;
  const std::int32_t end = t.last_preorder(x) + 1;
  std::vector<SideTreeNode> nodes(static_cast<std::size_t>(end - begin));
  if (nodes.empty()) return nodes;

  auto in_side = [&](Vertex u) {
    const std::int32_t p = t.preorder(u);
    return p >= begin && p < end;
  };
  const Vertex c = record.down_child;
  using Item = std::pair<Weight, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  for (std::int32_t p = begin; p < end; ++p) {
    const Vertex o = t.at_preorder(p);
    auto& node = nodes[p - begin];
    Weight best_down = kInf;
    Vertex down_entry = kNoVertex;
    for (const auto& nb : g.neighbors(o)) {
      const Vertex u = nb.to;
      if (!t.reachable(u)) continue;
      if (!t.is_ancestor(x, u)) {
        const Weight cand = t.dist(u) + nb.w;
        if (cand < node.dist) {
          node.dist = cand;
          node.entry = u;
          node.side = EntrySide::kAbove;
        }
      } else if (down && c != kNoVertex && t.is_ancestor(c, u)) {
        const Weight est = down(record, u);
        if (est == kInf) continue;
        const Weight cand = est + nb.w;
        if (cand < best_down) {
          best_down = cand;
          down_entry = u;
        }
      }
    }
    if (best_down < node.dist) {
      node.dist = best_down;
      node.entry = down_entry;
      node.side = EntrySide::kDown;
    }
    if (node.dist != kInf) heap.emplace(node.dist, p - begin);
  }

  while (!heap.empty()) {
    auto [d, idx] = heap.top();
    heap.pop();
    if (d != nodes[idx].dist) continue;
    const Vertex o = t.at_preorder(begin + idx);
    for (const auto& nb : g.neighbors(o)) {
      if (!t.reachable(nb.to) || !in_side(nb.to)) continue;
      auto& next = nodes[t.preorder(nb.to) - begin];
      const Weight cand = d + nb.w;
      if (cand < next.dist) {
        next.dist = cand;
        next.parent = o;
        next.entry = kNoVertex;
        next.side = EntrySide::kNone;
        heap.emplace(cand, t.preorder(nb.to) - begin);
      }
    }
  }
  return nodes;
}

namespace {

// Key ordering for jump-edge candidates: cost-related value, then ids.
using Candidate = std::tuple<Weight, Vertex, Vertex, bool>;

}  // namespace

PathFaultStructure build_path_structure(const Graph& g, const ShortestPathTree& t,
                                        const DecompositionPath& path, std::int32_t path_id) {
  PathFaultStructure out;
  out.path_id = path_id;
  const auto& pv = path.vertices;
  const auto k = static_cast<std::int32_t>(pv.size());
  if (k == 0) return out;
  const std::int32_t first_failing = pv[0] == t.root() ? 1 : 0;

  // Deepest path index whose subtree contains u, -1 when outside the path's subtree.
  auto owner = [&](Vertex u) -> std::int32_t {
    if (!t.reachable(u) || !t.is_ancestor(pv[0], u)) return -1;
    std::int32_t lo = 0, hi = k - 1;
    while (lo < hi) {
      const std::int32_t mid = (lo + hi + 1) / 2;
      if (t.is_ancestor(pv[mid], u)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  };

  for (std::int32_t i = first_failing; i < k; ++i) {
    FailureRecord rec;
    rec.failed = pv[i];
    rec.down_child = i + 1 < k ? pv[i + 1] : kNoVertex;
    rec.side_begin = t.preorder(pv[i]) + 1 + (rec.down_child == kNoVertex ? 0 : t.subtree_size(rec.down_child));
    rec.side_tree = grow_side_tree(g, t, rec, {});
    out.records.push_back(std::move(rec));
  }
  auto rec_at = [&](std::int32_t i) -> FailureRecord& { return out.records[i - first_failing]; };

  // Jump edges. An edge (y, z) with owner(y) < owner(z) enters the down part of
  // every failing index i with owner(y) < i < owner(z) from above, and of
  // index owner(y) from the side when y is not itself a path vertex.
  struct Interval {
    std::int32_t lo, hi;
    Candidate key;
  };
  std::vector<Interval> intervals;
  std::vector<std::optional<Candidate>> side_best(k);
  if (k > 1) {
    const std::int32_t begin = t.preorder(pv[1]);
    const std::int32_t end = t.last_preorder(pv[1]);
    for (std::int32_t p = begin; p <= end; ++p) {
      const Vertex z = t.at_preorder(p);
      const std::int32_t jz = owner(z);
      for (const auto& nb : g.neighbors(z)) {
        const Vertex y = nb.to;
        if (!t.reachable(y)) continue;
        const std::int32_t jy = owner(y);
        if (jy >= jz) continue;
        const std::int32_t lo = std::max(jy + 1, first_failing);
        const std::int32_t hi = jz - 1;
        if (lo <= hi) intervals.push_back({lo, hi, Candidate{t.dist(y) + nb.w + t.dist(z), y, z, false}});
        if (jy >= first_failing && y != pv[jy]) {
          const auto& rec = rec_at(jy);
          const Weight sd = rec.side_tree[rec.side_index(t, y)].dist;
          if (sd == kInf) continue;
          Candidate cand{sd + nb.w + t.dist(z), y, z, true};
          if (!side_best[jy] || cand < *side_best[jy]) side_best[jy] = cand;
        }
      }
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  auto later = [](const Interval& a, const Interval& b) { return b.key < a.key; };
  std::priority_queue<Interval, std::vector<Interval>, decltype(later)> active(later);
  std::size_t next = 0;
  for (std::int32_t i = first_failing; i + 1 < k; ++i) {
    while (next < intervals.size() && intervals[next].lo <= i) active.push(intervals[next++]);
    while (!active.empty() && active.top().hi < i) active.pop();
    std::optional<Candidate> best = side_best[i];
    if (!active.empty() && (!best || active.top().key < *best)) best = active.top().key;
    if (!best) continue;
    auto [value, y, z, from_side] = *best;
    rec_at(i).jump = JumpEdge{y, z, value - t.dist(pv[i + 1]), from_side};
  }

  for (auto& rec : out.records) {
    DownEstimate est = [&t](const FailureRecord& r, Vertex u) {
      return r.jump ? r.jump->cost + t.dist(u) - t.dist(r.down_child) : kInf;
    };
    rec.fail_tree = grow_side_tree(g, t, rec, est);
  }
  return out;
}

void check_single_source_query(const ShortestPathTree& t, Vertex v, Vertex x) {
  if (v < 0 || v >= t.size()) throw std::invalid_argument("query: vertex out of range");
  if (x != kNoVertex && (x < 0 || x >= t.size())) throw std::invalid_argument("query: failed vertex out of range");
  if (v == x) throw std::invalid_argument("query: target equals failed vertex");
  if (x == t.root()) throw std::invalid_argument("query: failed vertex equals source");
}

ReplacementAnswer tree_answer(const ShortestPathTree& t, Vertex v, bool want_path) {
  ReplacementAnswer ans;
  if (!t.reachable(v)) return ans;
  ans.distance = t.dist(v);
  if (want_path) ans.path = t.tree_path(v);
  return ans;
}

Sssp3Oracle Sssp3Oracle::build(const Graph& g, Vertex source) {
  if (!g.contains(source)) throw std::invalid_argument("build_sssp3: source out of range");
  Sssp3Oracle o;
  o.tree_ = shortest_path_tree(g, source);
  o.decomposition_ = decompose_tree(o.tree_);
  const auto& paths = o.decomposition_.paths();
  o.structures_.resize(paths.size());
  // Paths are independent given the tree.
  parallel_for(paths.size(), 0, [&](std::size_t i) {
    o.structures_[i] = build_path_structure(g, o.tree_, paths[i], static_cast<std::int32_t>(i));
  });
  o.finalize();
  return o;
}

void Sssp3Oracle::finalize() {
  locator_.assign(tree_.size(), {-1, -1});
  for (std::size_t s = 0; s < structures_.size(); ++s) {
    const auto& recs = structures_[s].records;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      locator_[recs[i].failed] = {static_cast<std::int32_t>(s), static_cast<std::int32_t>(i)};
    }
  }
}

const FailureRecord* Sssp3Oracle::record(Vertex x) const {
  if (x < 0 || x >= tree_.size() || locator_[x].first < 0) return nullptr;
  return &structures_[locator_[x].first].records[locator_[x].second];
}

Weight Sssp3Oracle::down_distance(const FailureRecord& rec, Vertex v) const {
  if (!rec.jump) return kInf;
  return rec.jump->cost + tree_.dist(v) - tree_.dist(rec.down_child);
}

std::vector<Vertex> Sssp3Oracle::down_walk(const FailureRecord& rec, Vertex v) const {
  std::vector<Vertex> walk;
  const auto& j = *rec.jump;
  if (j.from_side) {
    walk = side_walk(rec, rec.side_tree, j.from, {});
  } else {
    walk = tree_.tree_path(j.from).vertices;
  }
  // Climb from the entry point to the chain successor, then descend to v.
  for (Vertex u = j.to; u != rec.down_child; u = tree_.parent(u)) walk.push_back(u);
  walk.push_back(rec.down_child);
  tree_.append_descent(rec.down_child, v, walk);
  return walk;
}

std::vector<Vertex> Sssp3Oracle::side_walk(const FailureRecord& rec, std::span<const SideTreeNode> tree, Vertex o,
                                           const std::function<std::vector<Vertex>(Vertex)>& down_walk_fn) const {
  std::vector<Vertex> chain;
  Vertex u = o;
  const SideTreeNode* node = &tree[rec.side_index(tree_, u)];
  while (node->parent != kNoVertex) {
    chain.push_back(u);
    u = node->parent;
    node = &tree[rec.side_index(tree_, u)];
  }
  chain.push_back(u);
  std::vector<Vertex> walk;
  if (node->side == EntrySide::kAbove) {
    walk = tree_.tree_path(node->entry).vertices;
  } else if (down_walk_fn) {
    walk = down_walk_fn(node->entry);
  } else {
    walk = down_walk(rec, node->entry);
  }
  walk.insert(walk.end(), chain.rbegin(), chain.rend());
  return walk;
}

ReplacementAnswer Sssp3Oracle::query(Vertex v, Vertex x, bool want_path) const {
  check_single_source_query(tree_, v, x);
  if (!tree_.reachable(v)) return {};
  if (x == kNoVertex || !tree_.reachable(x) || tree_.lca(v, x) != x) return tree_answer(tree_, v, want_path);
  const FailureRecord& rec = *record(x);
  ReplacementAnswer ans;
  if (rec.down_child != kNoVertex && tree_.is_ancestor(rec.down_child, v)) {
    ans.distance = down_distance(rec, v);
    if (want_path && ans.reachable()) ans.path = Path{down_walk(rec, v), ans.distance};
  } else {
    const auto& node = rec.fail_tree[rec.side_index(tree_, v)];
    ans.distance = node.dist;
    if (want_path && ans.reachable()) ans.path = Path{side_walk(rec, rec.fail_tree, v, {}), ans.distance};
  }
  return ans;
}

Sssp3Stats Sssp3Oracle::stats() const {
  Sssp3Stats s;
  s.levels = decomposition_.paths().empty() ? 0 : decomposition_.max_depth() + 1;
  s.paths = structures_.size();
  for (const auto& ps : structures_) {
    s.records += ps.records.size();
    for (const auto& r : ps.records) {
      s.jump_edges += r.jump ? 1 : 0;
      s.side_nodes += r.side_tree.size() + r.fail_tree.size();
    }
  }
  s.entries = static_cast<std::size_t>(tree_.size()) + s.records + s.jump_edges + s.side_nodes;
  return s;
}

}  // namespace dso
