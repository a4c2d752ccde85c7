#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dsoracle/exact.hpp"
#include "dsoracle/graph.hpp"
#include "dsoracle/shortest_path_tree.hpp"

namespace dso {

struct OracleCodec;

/// One heavy chain of the tree, listed top to bottom.
struct DecompositionPath {
  std::vector<Vertex> vertices;
  /// Number of light edges between the root and the head of the chain; the
  /// recursion level on which this path is processed.
  std::int32_t depth = 0;
};

/// Partition of the reachable part of a tree into heavy chains. The chain
/// through the root is path 0; every subtree hanging off a chain is handled
/// by the chains inside it, so a vertex belongs to exactly one chain and lies
/// below at most log2(n) light edges.
class PathDecomposition {
 public:
  const std::vector<DecompositionPath>& paths() const { return paths_; }
  std::int32_t path_of(Vertex v) const { return path_of_[v]; }
  std::int32_t position(Vertex v) const { return position_[v]; }
  std::int32_t max_depth() const { return max_depth_; }

  friend PathDecomposition decompose_tree(const ShortestPathTree& t);

 private:
  std::vector<DecompositionPath> paths_;
  std::vector<std::int32_t> path_of_;
  std::vector<std::int32_t> position_;
  std::int32_t max_depth_ = 0;
};

PathDecomposition decompose_tree(const ShortestPathTree& t);

/// Roots of the subtrees that hang off `v` (every child but the heavy one).
std::span<const Vertex> hanging_roots(const ShortestPathTree& t, Vertex v);

// Notation for a failed path vertex x with successor c on its chain:
//   above  (U_x) = everything outside the subtree of x,
//   down   (D_x) = the subtree of c,
//   side   (O_x) = the subtree of x minus x and minus the down part.
// With the heavy-first preorder the side part is one preorder interval.

enum class EntrySide : std::uint8_t { kNone = 0, kAbove = 1, kDown = 2 };

/// Node of a tree grown over the side part of a failure.
/// `parent` is the predecessor inside the side part; when it is kNoVertex the
/// node is entered straight from `entry`, which lies above (exact tree path)
/// or down (approximate replacement path).
struct SideTreeNode {
  Weight dist = kInf;
  Vertex parent = kNoVertex;
  Vertex entry = kNoVertex;
  EntrySide side = EntrySide::kNone;

  friend bool operator==(const SideTreeNode&, const SideTreeNode&) = default;
};

/// Edge crossing into the down part that realizes delta(r, c, x).
struct JumpEdge {
  Vertex from = kNoVertex;  // above or side part
  Vertex to = kNoVertex;    // down part
  Weight cost = kInf;       // delta(r, c, x)
  bool from_side = false;

  friend bool operator==(const JumpEdge&, const JumpEdge&) = default;
};

/// Everything stored for one failed path vertex.
struct FailureRecord {
  Vertex failed = kNoVertex;
  Vertex down_child = kNoVertex;
  std::optional<JumpEdge> jump;
  std::int32_t side_begin = 0;
  std::vector<SideTreeNode> side_tree;  // shortest paths over side + above-edges
  std::vector<SideTreeNode> fail_tree;  // same graph plus down-edges

  std::size_t side_index(const ShortestPathTree& t, Vertex v) const {
    return static_cast<std::size_t>(t.preorder(v) - side_begin);
  }
};

struct PathFaultStructure {
  std::int32_t path_id = 0;
  std::vector<FailureRecord> records;
};

/// Estimate of delta(r, u, x) for u in the down part of `record`.
using DownEstimate = std::function<Weight(const FailureRecord& record, Vertex u)>;

/// Grows the side tree from `record.failed`'s side interval: above-edges only
/// when `down` is empty, otherwise also down-edges weighted by `down`.
std::vector<SideTreeNode> grow_side_tree(const Graph& g, const ShortestPathTree& t,
                                         const FailureRecord& record, const DownEstimate& down);

/// Per-path structure: side trees, jump edges, then fail trees that use the
/// 3-approximate down answers.
PathFaultStructure build_path_structure(const Graph& g, const ShortestPathTree& t,
                                        const DecompositionPath& path, std::int32_t path_id);

struct Sssp3Stats {
  std::int32_t levels = 0;
  std::size_t paths = 0;
  std::size_t records = 0;
  std::size_t jump_edges = 0;
  std::size_t side_nodes = 0;
  /// Tree records plus side/fail tree nodes plus jump edges.
  std::size_t entries = 0;
};

/// Single-source 3-approximate replacement paths for weighted graphs.
class Sssp3Oracle {
 public:
  Sssp3Oracle() = default;

  static Sssp3Oracle build(const Graph& g, Vertex source);

  Vertex source() const { return tree_.root(); }
  Vertex num_vertices() const { return tree_.size(); }
  const ShortestPathTree& tree() const { return tree_; }
  const PathDecomposition& decomposition() const { return decomposition_; }
  const std::vector<PathFaultStructure>& structures() const { return structures_; }

  /// Approximate delta(source, v, x). `x == kNoVertex` asks for the intact
  /// distance. Throws std::invalid_argument for v == x or x == source.
  ReplacementAnswer query(Vertex v, Vertex x, bool want_path = true) const;

  /// nullptr for the source and unreachable vertices.
  const FailureRecord* record(Vertex x) const;

  /// 3-approximate distance to v in the down part of `record`.
  Weight down_distance(const FailureRecord& record, Vertex v) const;
  /// Walk realizing down_distance, from the source to v.
  std::vector<Vertex> down_walk(const FailureRecord& record, Vertex v) const;
  /// Walk from the source to side vertex o through `tree`, with down entries
  /// expanded by `down_walk_fn`.
  std::vector<Vertex> side_walk(const FailureRecord& record, std::span<const SideTreeNode> tree, Vertex o,
                                const std::function<std::vector<Vertex>(Vertex)>& down_walk_fn) const;

  Sssp3Stats stats() const;

  friend struct OracleCodec;

 private:
  void finalize();

  ShortestPathTree tree_;
  PathDecomposition decomposition_;
  std::vector<PathFaultStructure> structures_;
  std::vector<std::pair<std::int32_t, std::int32_t>> locator_;  // vertex -> (structure, record)
};

/// Validates a (v, x) query against a tree; shared by the single-source oracles.
void check_single_source_query(const ShortestPathTree& t, Vertex v, Vertex x);

/// Intact tree answer for v (kInf when unreachable).
ReplacementAnswer tree_answer(const ShortestPathTree& t, Vertex v, bool want_path);

}  // namespace dso
