#include "dsoracle/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace dso {

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (auto& e : edges_) {
    if (!contains(e.u) || !contains(e.v)) {
      throw std::invalid_argument("graph: edge endpoint out of range (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ")");
    }
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop at " + std::to_string(e.u));
    if (!(e.w > 0) || !std::isfinite(e.w)) {
      throw std::invalid_argument("graph: weights must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                  std::to_string(edges_[i].v) + ")");
    }
  }

  std::vector<std::size_t> deg(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
    if (e.w != 1.0) unweighted_ = false;
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.w};
    adjacency_[fill[e.v]++] = {e.u, e.w};
  }
  for (Vertex v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
}

std::optional<Weight> Graph::weight(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Neighbor& a, Vertex t) { return a.to < t; });
  if (it == nb.end() || it->to != v) return std::nullopt;
  return it->w;
}

std::uint64_t Graph::content_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n_));
  for (const auto& e : edges_) {
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(e.w));
    std::memcpy(&bits, &e.w, sizeof(bits));
    mix(bits);
  }
  return h;
}

std::optional<Weight> walk_weight(const Graph& g, std::span<const Vertex> vertices) {
  Weight total = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto w = g.weight(vertices[i - 1], vertices[i]);
    if (!w) return std::nullopt;
    total += *w;
  }
  return total;
}

bool is_valid_walk(const Graph& g, const Path& p, Vertex avoid) {
  if (p.vertices.empty()) return false;
  for (Vertex v : p.vertices) {
    if (!g.contains(v) || v == avoid) return false;
  }
  auto w = walk_weight(g, p.vertices);
  return w && *w == p.length;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph out;
  out.to_local.assign(g.num_vertices(), kNoVertex);
  out.to_original.assign(vertices.begin(), vertices.end());
  std::sort(out.to_original.begin(), out.to_original.end());
  out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()),
                        out.to_original.end());
  for (std::size_t i = 0; i < out.to_original.size(); ++i) {
    Vertex v = out.to_original[i];
    if (!g.contains(v)) throw std::invalid_argument("induced_subgraph: vertex out of range");
    out.to_local[v] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (Vertex v : out.to_original) {
    for (const auto& nb : g.neighbors(v)) {
      if (nb.to > v && out.to_local[nb.to] != kNoVertex) {
        edges.push_back({out.to_local[v], out.to_local[nb.to], nb.w});
      }
    }
  }
  out.graph = Graph(static_cast<Vertex>(out.to_original.size()), std::move(edges));
  return out;
}

}  // namespace dso
