#pragma once

#include <cstdint>
#include <vector>

#include "dsoracle/exact.hpp"
#include "dsoracle/graph.hpp"
#include "dsoracle/shortest_path_tree.hpp"
#include "dsoracle/sssp3.hpp"

namespace dso {

/// Special vertices of a BFS tree. Special levels are the distinct values
/// floor((1+eps)^i) up to the tree height (inclusive); a vertex on such a level
/// is special when its subtree holds at least eps * level vertices.
struct SpecialVertexSet {
  double epsilon = 0;
  std::vector<std::int32_t> levels;  // distinct special levels, increasing
  std::vector<char> special;
  /// S(v): nearest special proper ancestor, kNoVertex if none.
  std::vector<Vertex> nearest;
  /// Nearest special ancestor-or-self; v belongs to V(owner[v]).
  std::vector<Vertex> owner;
  /// |V(u)| for special u, 0 elsewhere.
  std::vector<std::int32_t> claims;

  bool is_special(Vertex v) const { return special[v] != 0; }
  std::size_t count() const;
};

/// Throws std::invalid_argument unless 0 < epsilon < 1.
SpecialVertexSet compute_special_vertices(const ShortestPathTree& t, double epsilon);

struct SpecialLemmaReport {
  std::size_t distance_checked = 0;
  std::size_t distance_violations = 0;  // delta(v,S(v)) > (2eps/(1+eps)) level(v)
  std::size_t claim_checked = 0;
  std::size_t claim_violations = 0;  // |V(u)| < eps * level(u)

  bool ok() const { return distance_violations == 0 && claim_violations == 0; }
};

SpecialLemmaReport check_special_lemmas(const ShortestPathTree& t, const SpecialVertexSet& s);

enum class DetourKind : std::uint8_t {
  kNear = 0,         // failure at or below v': answered by the 3-approximate down part
  kUnreachable = 1,  // v disconnected from the source once x fails
  kTypeI = 2,        // detour rejoins at or above v': delegate to a special ancestor
  kTypeII = 3,       // explicit detour below v', possibly shared with an earlier failure
  kLong = 4,         // type II at least level(v)/eps long: 3-approximate answer suffices
};

/// Replacement path P(r,a) :: middle :: P(b,v) where the middle meets P(a,b)
/// only at its endpoints and b is the highest possible rejoin point.
struct DetourClass {
  DetourKind kind = DetourKind::kUnreachable;
  Weight exact = kInf;
  Vertex a = kNoVertex;
  Vertex b = kNoVertex;
  std::vector<Vertex> middle;  // a ... b, filled when requested
};

/// Classifies the detour of P(r, v, x) against v' (only level(v') matters);
/// yields kUnreachable, kTypeI or kTypeII. `avoiding` is the search from the
/// source in G - x.
DetourClass classify_detour(const ShortestPathTree& t, Vertex v, Vertex x, Vertex v_prime,
                            const SearchResult& avoiding, bool with_middle);
DetourClass classify_detour(const Graph& g, const ShortestPathTree& t, Vertex v, Vertex x, Vertex v_prime);

struct DetourEntry {
  DetourKind kind = DetourKind::kNear;
  Weight value = kInf;       // exact delta(r, v, x) as classified
  Vertex ref = kNoVertex;    // kTypeI: special ancestor answering instead
  std::int32_t detour = -1;  // kTypeII: index into SpecialRecord::detours

  friend bool operator==(const DetourEntry&, const DetourEntry&) = default;
};

struct StoredDetour {
  std::int32_t failure_level = 0;
  Weight length = kInf;  // full replacement path length
  std::vector<Vertex> middle;

  friend bool operator==(const StoredDetour&, const StoredDetour&) = default;
};

/// Data kept at special vertex v: one entry per failure level 1..level(v)-1.
struct SpecialRecord {
  Vertex vertex = kNoVertex;
  Vertex previous = kNoVertex;  // v'
  std::vector<DetourEntry> entries;
  std::vector<StoredDetour> detours;

  const DetourEntry& at_level(std::int32_t level) const { return entries[static_cast<std::size_t>(level - 1)]; }
};

struct SsspEpsStats {
  Sssp3Stats base;
  std::size_t special = 0;
  std::size_t special_levels = 0;
  std::size_t detour_entries = 0;
  std::size_t stored_detours = 0;
  std::size_t stored_detour_vertices = 0;
  std::size_t eps_side_nodes = 0;
  std::size_t entries = 0;
  SpecialLemmaReport lemmas;
  std::size_t type2_sequences = 0;
  std::size_t monotonicity_violations = 0;
};

/// Single-source (1+eps)-approximate replacement paths for unweighted graphs.
class SsspEpsOracle {
 public:
  SsspEpsOracle() = default;

  /// Throws std::invalid_argument for weighted graphs or eps outside (0, 6).
  static SsspEpsOracle build(const Graph& g, Vertex source, double epsilon);

  Vertex source() const { return base_.source(); }
  Vertex num_vertices() const { return base_.num_vertices(); }
  double epsilon() const { return epsilon_; }
  double internal_epsilon() const { return specials_.epsilon; }
  const Sssp3Oracle& base() const { return base_; }
  const ShortestPathTree& tree() const { return base_.tree(); }
  const SpecialVertexSet& specials() const { return specials_; }
  const SpecialRecord* special_record(Vertex v) const;

  ReplacementAnswer query(Vertex v, Vertex x, bool want_path = true) const;

  /// Answer stored at special w for failure x, with x above w and w in the
  /// down part of x.
  Weight special_distance(Vertex w, Vertex x) const;
  std::vector<Vertex> special_walk(Vertex w, Vertex x) const;

  /// (1+eps)-grade answer for v in the down part of x.
  Weight down_distance(const FailureRecord& rec, Vertex v) const;
  std::vector<Vertex> down_walk(const FailureRecord& rec, Vertex v) const;

  const SsspEpsStats& stats() const { return stats_; }

  friend struct OracleCodec;

 private:
  /// Deepest special ancestor-or-self of v that is worth consulting for x, or
  /// kNoVertex when condition C or the 3-approximate answer is at least as good.
  Vertex pick_special(const FailureRecord& rec, Vertex v, Weight* via) const;
  void finalize();

  double epsilon_ = 0;
  Sssp3Oracle base_;
  SpecialVertexSet specials_;
  std::vector<SpecialRecord> records_;
  std::vector<std::int32_t> record_index_;  // vertex -> records_ slot or -1
  std::vector<std::vector<SideTreeNode>> fail_trees_;  // per failed vertex, over its side part
  SsspEpsStats stats_;
};

}  // namespace dso
