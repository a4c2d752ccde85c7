#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsoracle/exact.hpp"
#include "dsoracle/graph.hpp"
#include "dsoracle/sssp_eps.hpp"

namespace dso {

/// A_0 = V ⊇ A_1 ⊇ ... ⊇ A_{k-1} ⊋ A_k = ∅, each level kept from the previous
/// one with probability n^{-1/k}.
struct SampleHierarchy {
  std::int32_t k = 0;
  std::uint64_t seed = 0;
  std::uint32_t attempts = 1;  // samplings drawn until A_{k-1} was nonempty
  std::vector<std::vector<Vertex>> levels;  // A_0 .. A_{k-1}, sorted
  std::vector<std::int32_t> rank;           // largest i with v in A_i

  bool contains(std::int32_t i, Vertex v) const { return i < k && rank[v] >= i; }
  /// Centers at level i: A_i minus A_{i+1}, or all of A_{k-1} on top.
  bool is_center(std::int32_t i, Vertex v) const { return i == k - 1 ? rank[v] >= i : rank[v] == i; }
};

/// Throws std::invalid_argument for k <= 1 or n <= 0.
SampleHierarchy sample_hierarchy(Vertex n, std::int32_t k, std::uint64_t seed);

/// Nearest member of `set` in G - x for every vertex; ties go to the smallest id.
struct NearestSample {
  std::vector<Weight> dist;
  std::vector<Vertex> vertex;  // kNoVertex when no member is reachable
};
NearestSample nearest_sample(const Graph& g, std::span<const Vertex> set, Vertex x = kNoVertex);

/// Ball^x(v, A_i, A_{i+1}) with members sorted; `bound` is delta(v, A_{i+1}, x),
/// infinite on the top level.
struct BallRecord {
  std::vector<Vertex> members;
  std::vector<Weight> dist;
  Weight bound = kInf;
};

BallRecord ball(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, Vertex x = kNoVertex);
/// Members w with delta(v,w,x) < delta(v,A_{i+1},x) / (1+eps).
BallRecord truncated_ball(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, Vertex x, double eps);

/// C^x(w, A_i, A_{i+1}, eps) by a search from w pruned at the truncation
/// test; `bound` holds delta(., A_{i+1}, x) for every vertex. Sorted.
std::vector<Vertex> truncated_cluster(const Graph& g, Vertex w, Vertex x, double eps, std::span<const Weight> bound);

/// Greedy witness failures on P(v, p_{i+1}(v)) = v = x_0, x_1, ..., x_l.
struct WitnessSet {
  std::vector<Vertex> path;
  std::vector<Weight> value;  // value[j] = delta(v, A_{i+1}, x_j); value[0] unused
  std::vector<std::int32_t> chosen;
  Weight h = 0;
};

/// Each step takes the largest remaining index whose value is at least the
/// remaining maximum divided by (1+eps).
WitnessSet witness_set(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i, double eps);

struct TruncatedBallUnion {
  std::vector<Vertex> all_failures;   // union over every x in V plus no failure
  std::vector<Vertex> path_failures;  // union over x on P(v, p_{i+1}(v)) plus no failure
  std::vector<Vertex> cover;          // union over witnesses of plain fault balls, plus Ball(v)
  WitnessSet witness;

  bool covered() const;
};

/// Requires i < k - 1.
TruncatedBallUnion truncated_ball_union(const Graph& g, const SampleHierarchy& h, Vertex v, std::int32_t i,
                                        double eps);

/// For x1 = path[j1], x2 = path[j2] with 0 < j1 < j2 and
/// value(x1) <= (1+eps) value(x2): checks
/// Ball^{x1}(v, eps) ⊆ Ball(v) ∪ Ball^{x2}(v). Returns false when the
/// premise fails; `premise` reports which.
bool check_x1_x2(const Graph& g, const SampleHierarchy& h, const WitnessSet& ws, Vertex v, std::int32_t i,
                 double eps, std::int32_t j1, std::int32_t j2, bool* premise);

struct ClusterOracle {
  Vertex center = kNoVertex;
  std::int32_t level = 0;
  std::vector<Vertex> vertices;  // sorted original ids; local id = index
  SsspEpsOracle oracle;

  Vertex local(Vertex v) const;
};

struct ApaspStats {
  std::size_t centers = 0;
  std::size_t cluster_vertices = 0;
  std::size_t sub_oracle_entries = 0;
  std::size_t nearest_entries = 0;
  std::size_t entries = 0;
};

struct ApaspQueryInfo {
  std::int32_t probes = 0;      // sub-oracle and nearest-index lookups
  std::int32_t best_level = -1;
};

/// All-pairs (2k-1)(1+eps)-approximate distances avoiding one failed vertex
/// on unweighted connected graphs.
class ApaspOracle {
 public:
  ApaspOracle() = default;

  static ApaspOracle build(const Graph& g, std::int32_t k, double epsilon, std::uint64_t seed);

  Vertex num_vertices() const { return static_cast<Vertex>(hierarchy_.rank.size()); }
  std::int32_t k() const { return hierarchy_.k; }
  double epsilon() const { return epsilon_; }
  const SampleHierarchy& hierarchy() const { return hierarchy_; }
  const std::vector<ClusterOracle>& clusters() const { return clusters_; }
  const ClusterOracle* cluster(std::int32_t level, Vertex w) const;
  /// N_i for 1 <= i < k, rooted at the virtual vertex n joined to A_i.
  const SsspEpsOracle& nearest_index(std::int32_t i) const { return nearest_.at(static_cast<std::size_t>(i)); }

  /// Throws std::invalid_argument for out-of-range ids or x in {u, v}.
  ReplacementAnswer query(Vertex u, Vertex v, Vertex x, bool want_path = true, ApaspQueryInfo* info = nullptr) const;

  /// A vertex of A_i near v in G - x with its distance and a walk from it
  /// to v; kNoVertex when A_i is unreachable.
  Vertex nearest(std::int32_t i, Vertex v, Vertex x, Weight* dist, std::vector<Vertex>* walk) const;

  ApaspStats stats() const;

  friend struct OracleCodec;

 private:
  void finalize();

  double epsilon_ = 0;
  SampleHierarchy hierarchy_;
  std::vector<ClusterOracle> clusters_;
  std::vector<SsspEpsOracle> nearest_;  // index i >= 1; root is the virtual vertex n
  std::vector<std::vector<std::int32_t>> center_index_;
};

}  // namespace dso
