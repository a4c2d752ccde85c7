#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace dso {

using Vertex = std::int32_t;
using Weight = double;

inline constexpr Vertex kNoVertex = -1;
inline constexpr Weight kInf = std::numeric_limits<Weight>::infinity();

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex to;
  Weight w;
};

/// Undirected graph with positive edge weights, immutable after construction.
///
/// Edges are normalized to u < v and kept sorted; adjacency lists are sorted by
/// neighbor id so lookups and traversal order are deterministic.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate pairs, ids out of
  /// range, or non-positive / non-finite weights.
  Graph(Vertex n, std::vector<Edge> edges);

  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool unweighted() const { return unweighted_; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<Weight> weight(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return weight(u, v).has_value(); }

  /// FNV-1a over (n, sorted edge list); stored in serialized oracles.
  std::uint64_t content_hash() const;

  bool contains(Vertex v) const { return v >= 0 && v < n_; }

 private:
  Vertex n_ = 0;
  bool unweighted_ = true;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

struct Path {
  std::vector<Vertex> vertices;
  Weight length = 0;
};

/// Sum of edge weights along `vertices`, or nullopt if some consecutive pair
/// is not an edge of `g`.
std::optional<Weight> walk_weight(const Graph& g, std::span<const Vertex> vertices);

/// True when `p` is a walk in `g`, avoids `avoid` (if given), and its stored
/// length equals its summed weight.
bool is_valid_walk(const Graph& g, const Path& p, Vertex avoid = kNoVertex);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_original;  // local -> original id
  std::vector<Vertex> to_local;     // original -> local id or kNoVertex
};

/// Subgraph on `vertices` keeping edges with both endpoints inside. Local ids
/// follow the increasing order of the original ids.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

}  // namespace dso
