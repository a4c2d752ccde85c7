#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dsoracle/graph.hpp"

namespace dso {

/// Distance (kInf when disconnected) and, when requested, a walk realizing it.
struct ReplacementAnswer {
  Weight distance = kInf;
  std::optional<Path> path;

  bool reachable() const { return distance != kInf; }
};

/// Shortest u-v path in G with vertex x removed (kNoVertex removes nothing).
/// Throws if u == x or v == x.
ReplacementAnswer exact_replacement(const Graph& g, Vertex u, Vertex v, Vertex x);

/// Distances from `source` in G with `x` removed (kNoVertex removes nothing).
std::vector<Weight> distances_avoiding(const Graph& g, Vertex source, Vertex x);

/// Table of delta(r, v, x) for every v and every x != r, built from one
/// masked single-source run per x. Runs fan out over worker threads; each run
/// writes its own row.
class ReplacementTable {
 public:
  ReplacementTable() = default;
  ReplacementTable(Vertex n, Vertex source) : n_(n), source_(source), d_(static_cast<std::size_t>(n) * n, kInf) {}

  Vertex num_vertices() const { return n_; }
  Vertex source() const { return source_; }

  /// delta(source, v, x); requires x != source and v != x.
  Weight at(Vertex v, Vertex x) const { return d_[static_cast<std::size_t>(x) * n_ + v]; }
  Weight& at(Vertex v, Vertex x) { return d_[static_cast<std::size_t>(x) * n_ + v]; }

  /// Rows "v,x,distance" for all v != x with x != source; header first.
  void write_csv(std::ostream& out) const;

 private:
  Vertex n_ = 0;
  Vertex source_ = 0;
  std::vector<Weight> d_;
};

ReplacementTable all_replacement_distances(const Graph& g, Vertex r, unsigned threads = 0);

/// dist[x][u][v] style all-pairs table for small graphs: for each failed x
/// (and x = n meaning "no failure"), all-pairs distances in G - x.
class AllPairsReplacement {
 public:
  explicit AllPairsReplacement(const Graph& g, unsigned threads = 0);

  Vertex num_vertices() const { return n_; }
  Weight at(Vertex u, Vertex v, Vertex x) const {
    const std::size_t slot = x == kNoVertex ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(x);
    return d_[(slot * n_ + u) * n_ + v];
  }

 private:
  Vertex n_ = 0;
  std::vector<Weight> d_;
};

/// Runs `body(i)` for i in [0, count) across worker threads.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace dso
