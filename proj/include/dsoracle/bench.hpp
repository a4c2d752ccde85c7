#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsoracle/container.hpp"
#include "dsoracle/graph.hpp"

namespace dso {

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// All-pairs oracles on larger graphs sample failures instead of enumerating.
  Vertex full_enumeration_cutoff = 80;
  std::int32_t sampled_failures = 50;
  unsigned threads = 0;
  double histogram_width = 0.05;
};

/// Outcome of comparing an oracle against the exact baseline. Stretch is
/// reported / exact over reachable queries with positive exact distance.
struct VerifyReport {
  std::size_t queries = 0;
  std::size_t stretch_samples = 0;
  std::size_t stretch_violations = 0;  // reported < exact or above the bound
  std::size_t invalid_paths = 0;
  std::size_t reachability_mismatches = 0;
  double bound = 0;
  double mean_stretch = 1;
  double max_stretch = 1;
  double mean_probes = 0;
  std::int32_t max_probes = 0;
  double histogram_width = 0.05;
  std::vector<std::size_t> histogram;  // bin i counts stretch in [1 + i w, 1 + (i+1) w)

  bool ok() const { return stretch_violations == 0 && invalid_paths == 0 && reachability_mismatches == 0; }
};

/// Single-source kinds: every (v, x) with x in {none} ∪ V \ {r}. All-pairs:
/// every (u, v, x) up to the cutoff, else `sampled_failures` failures per
/// source u drawn from the seed, shared by all targets v. Results do not
/// depend on the thread count.
VerifyReport verify_container(const Graph& g, const OracleContainer& c, const VerifyOptions& options = {});

void write_histogram_csv(std::ostream& out, const VerifyReport& report);

struct BenchRow {
  Vertex n = 0;
  std::size_t m = 0;
  std::string kind;
  std::string params;  // "key=value" pairs joined by ';'
  double build_ms = 0;
  std::size_t entries = 0;
  double mean_stretch = 0;
  double max_stretch = 0;
  double mean_probes = 0;
};

inline constexpr const char* kBenchHeader = "n,m,kind,params,build_ms,entries,mean_stretch,max_stretch,mean_probes";

std::string describe_params(OracleKind kind, const OracleParams& p);

/// Builds, then measures with verify_container unless `verify` is false, in
/// which case the stretch and probe columns are left at 0.
BenchRow bench_case(const Graph& g, OracleKind kind, const OracleParams& params, const VerifyOptions& options,
                    bool verify = true, VerifyReport* report = nullptr);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dso
