#pragma once

#include <cstdint>
#include <string>

#include "dsoracle/graph.hpp"

namespace dso {

/// splitmix64-seeded xoshiro256** generator. Fixed algorithm so seeded graphs
/// and hierarchies are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t s_[4];
};

/// Derives an independent stream seed from a base seed and a name.
std::uint64_t sub_seed(std::uint64_t base, std::string_view name, std::uint64_t index = 0);

struct WeightRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

/// G(n, p); resampled with successive sub-seeds until connected (at most
/// `max_retries` attempts, then throws std::runtime_error).
Graph generate_gnp(Vertex n, double p, std::uint64_t seed, WeightRange weights = {},
                   int max_retries = 1000);
Graph generate_grid(Vertex rows, Vertex cols, WeightRange weights = {}, std::uint64_t seed = 0);
Graph generate_cycle(Vertex n, WeightRange weights = {}, std::uint64_t seed = 0);
Graph generate_path(Vertex n, WeightRange weights = {}, std::uint64_t seed = 0);
/// Vertex 0 is the center.
Graph generate_star(Vertex n, WeightRange weights = {}, std::uint64_t seed = 0);

bool is_connected(const Graph& g);

}  // namespace dso
