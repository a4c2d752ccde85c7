#pragma once

#include <cstdint>
#include <vector>

#include "dsoracle/graph.hpp"

namespace dso {

/// Distances and parents of one single-source search.
struct SearchResult {
  std::vector<Weight> dist;
  std::vector<Vertex> parent;  // source maps to itself, unreachable to kNoVertex
};

/// Dijkstra (BFS when `g.unweighted()`) from `source`, skipping `blocked`.
/// Among equal-distance parents the smallest vertex id wins.
SearchResult single_source(const Graph& g, Vertex source, Vertex blocked = kNoVertex);

/// Rooted shortest-path tree with heavy-first preorder and O(1) LCA.
///
/// Children are ordered heavy child first (largest subtree, smallest id on
/// ties), then by increasing id. Consequently the subtree of the heavy child
/// of x occupies the preorder range right after x, and the remaining (light)
/// subtrees of x form one contiguous block after it.
class ShortestPathTree {
 public:
  ShortestPathTree() = default;
  ShortestPathTree(Vertex root, std::vector<Vertex> parent, std::vector<Weight> dist);

  Vertex root() const { return root_; }
  Vertex size() const { return static_cast<Vertex>(parent_.size()); }
  bool reachable(Vertex v) const { return parent_[v] != kNoVertex; }

  Vertex parent(Vertex v) const { return parent_[v]; }
  Weight dist(Vertex v) const { return dist_[v]; }
  std::int32_t level(Vertex v) const { return level_[v]; }
  std::int32_t height() const { return height_; }

  std::int32_t preorder(Vertex v) const { return tin_[v]; }
  /// Largest preorder index inside the subtree of v.
  std::int32_t last_preorder(Vertex v) const { return tout_[v]; }
  std::int32_t subtree_size(Vertex v) const { return size_[v]; }
  Vertex at_preorder(std::int32_t i) const { return order_[i]; }
  std::int32_t num_reachable() const { return static_cast<std::int32_t>(order_.size()); }

  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  Vertex heavy_child(Vertex v) const { return children_[v].empty() ? kNoVertex : children_[v][0]; }

  /// Reachable u is an ancestor of reachable v (u == v counts).
  bool is_ancestor(Vertex u, Vertex v) const {
    return tin_[u] <= tin_[v] && tin_[v] <= tout_[u];
  }

  /// Throws std::invalid_argument if either vertex is unreachable.
  Vertex lca(Vertex u, Vertex v) const;

  /// Root-to-v path; throws for unreachable v.
  Path tree_path(Vertex v) const;

  /// Appends the tree path strictly below `ancestor` down to `v` (inclusive).
  void append_descent(Vertex ancestor, Vertex v, std::vector<Vertex>& out) const;

  const std::vector<Vertex>& parents() const { return parent_; }
  const std::vector<Weight>& distances() const { return dist_; }

 private:
  Vertex root_ = kNoVertex;
  std::int32_t height_ = 0;
  std::vector<Vertex> parent_;
  std::vector<Weight> dist_;
  std::vector<std::int32_t> level_;
  std::vector<std::int32_t> tin_;
  std::vector<std::int32_t> tout_;
  std::vector<std::int32_t> size_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> children_;
  // sparse_[j][i]: vertex of minimum level among order_[i .. i + 2^j).
  std::vector<std::vector<Vertex>> sparse_;
};

ShortestPathTree shortest_path_tree(const Graph& g, Vertex root);

}  // namespace dso
