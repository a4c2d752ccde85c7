#include "dsoracle/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dsoracle/exact.hpp"
#include "dsoracle/generate.hpp"

namespace dso {

namespace {

struct Partial {
  std::size_t queries = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::size_t invalid_paths = 0;
  std::size_t mismatches = 0;
  double stretch_sum = 0;
  double stretch_max = 1;
  double probe_sum = 0;
  std::int32_t probe_max = 0;
  std::vector<std::size_t> histogram;
};

class Checker {
 public:
  Checker(const Graph& g, const OracleContainer& c, double width)
      : g_(g), c_(c), bound_(stretch_bound(c)), width_(width) {}

  double bound() const { return bound_; }

  void check(Vertex start, Vertex v, Vertex x, Weight exact, Partial& p) const {
    std::int32_t probes = 0;
    const auto a = query_container(c_, start, v, x, true, &probes);
    ++p.queries;
    p.probe_sum += probes;
    p.probe_max = std::max(p.probe_max, probes);
    if (exact == kInf || !a.reachable()) {
      if (exact != a.distance) ++p.mismatches;
      return;
    }
    if (a.distance < exact || a.distance > bound_ * exact * (1 + 1e-12)) ++p.violations;
    if (!a.path || a.path->vertices.empty() || a.path->vertices.front() != start || a.path->vertices.back() != v ||
        a.path->length != a.distance || !is_valid_walk(g_, *a.path, x)) {
      ++p.invalid_paths;
    }
    if (exact <= 0) return;
    const double s = a.distance / exact;
    ++p.samples;
    p.stretch_sum += s;
    p.stretch_max = std::max(p.stretch_max, s);
    const auto bin = static_cast<std::size_t>(std::max(0.0, std::floor((s - 1) / width_ + 1e-9)));
    if (p.histogram.size() <= bin) p.histogram.resize(bin + 1, 0);
    ++p.histogram[bin];
  }

 private:
  const Graph& g_;
  const OracleContainer& c_;
  double bound_;
  double width_;
};

VerifyReport merge(const std::vector<Partial>& parts, double bound, double width) {
  VerifyReport r;
  r.bound = bound;
  r.histogram_width = width;
  double stretch_sum = 0;
  double probe_sum = 0;
  for (const auto& p : parts) {
    r.queries += p.queries;
    r.stretch_samples += p.samples;
    r.stretch_violations += p.violations;
    r.invalid_paths += p.invalid_paths;
    r.reachability_mismatches += p.mismatches;
    stretch_sum += p.stretch_sum;
    probe_sum += p.probe_sum;
    r.max_stretch = std::max(r.max_stretch, p.stretch_max);
    r.max_probes = std::max(r.max_probes, p.probe_max);
    if (r.histogram.size() < p.histogram.size()) r.histogram.resize(p.histogram.size(), 0);
    for (std::size_t i = 0; i < p.histogram.size(); ++i) r.histogram[i] += p.histogram[i];
  }
  if (r.stretch_samples > 0) r.mean_stretch = stretch_sum / static_cast<double>(r.stretch_samples);
  if (r.queries > 0) r.mean_probes = probe_sum / static_cast<double>(r.queries);
  return r;
}

// Failures checked from source u: none first, then all or a sample of V - u.
std::vector<Vertex> failures_for(Vertex n, Vertex u, const VerifyOptions& o) {
  std::vector<Vertex> xs{kNoVertex};
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < n; ++x) {
    if (x != u) rest.push_back(x);
  }
  const auto want = static_cast<std::size_t>(std::max(0, o.sampled_failures));
  if (n > o.full_enumeration_cutoff && rest.size() > want) {
    // Partial Fisher-Yates on a stream named after the source.
    Rng rng(sub_seed(o.seed, "verify", static_cast<std::uint64_t>(u)));
    for (std::size_t i = 0; i < want; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i),
                                                              static_cast<std::int64_t>(rest.size() - 1)));
      std::swap(rest[i], rest[j]);
    }
    rest.resize(want);
    std::sort(rest.begin(), rest.end());
  }
  xs.insert(xs.end(), rest.begin(), rest.end());
  return xs;
}

}  // namespace

VerifyReport verify_container(const Graph& g, const OracleContainer& c, const VerifyOptions& options) {
  if (g.num_vertices() != c.fingerprint.n || g.content_hash() != c.fingerprint.graph_hash) {
    throw std::invalid_argument("verify: graph does not match the oracle fingerprint");
  }
  if (!(options.histogram_width > 0)) throw std::invalid_argument("verify: histogram width must be positive");
  const Vertex n = g.num_vertices();
  Checker checker(g, c, options.histogram_width);
  std::vector<Partial> parts;
  if (c.kind == OracleKind::kApasp) {
    parts.resize(static_cast<std::size_t>(n));
    parallel_for(parts.size(), options.threads, [&](std::size_t i) {
      const auto u = static_cast<Vertex>(i);
      for (Vertex x : failures_for(n, u, options)) {
        const auto dist = distances_avoiding(g, u, x);
        for (Vertex v = 0; v < n; ++v) {
          if (v != x) checker.check(u, v, x, dist[v], parts[i]);
        }
      }
    });
  } else {
    const Vertex r = c.params.source;
    parts.resize(static_cast<std::size_t>(n) + 1);
    parallel_for(parts.size(), options.threads, [&](std::size_t i) {
      const Vertex x = i == 0 ? kNoVertex : static_cast<Vertex>(i - 1);
      if (x == r) return;
      const auto dist = distances_avoiding(g, r, x);
      for (Vertex v = 0; v < n; ++v) {
        if (v != x) checker.check(r, v, x, dist[v], parts[i]);
      }
    });
  }
  return merge(parts, checker.bound(), options.histogram_width);
}

void write_histogram_csv(std::ostream& out, const VerifyReport& report) {
  out << "stretch_lo,stretch_hi,count\n";
  for (std::size_t i = 0; i < report.histogram.size(); ++i) {
    out << 1 + static_cast<double>(i) * report.histogram_width << ','
        << 1 + static_cast<double>(i + 1) * report.histogram_width << ',' << report.histogram[i] << '\n';
  }
}

std::string describe_params(OracleKind kind, const OracleParams& p) {
  std::ostringstream s;
  switch (kind) {
    case OracleKind::kSssp3:
      s << "r=" << p.source;
      break;
    case OracleKind::kSsspEps:
      s << "r=" << p.source << ";eps=" << p.epsilon;
      break;
    case OracleKind::kApasp:
      s << "k=" << p.k << ";eps=" << p.epsilon << ";seed=" << p.seed;
      break;
  }
  return s.str();
}

BenchRow bench_case(const Graph& g, OracleKind kind, const OracleParams& params, const VerifyOptions& options,
                    bool verify, VerifyReport* report) {
  BenchRow row;
  row.n = g.num_vertices();
  row.m = g.num_edges();
  row.kind = to_string(kind);
  row.params = describe_params(kind, params);
  const auto start = std::chrono::steady_clock::now();
  auto c = build_container(g, kind, params);
  row.build_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.entries = entry_count(c);
  if (verify) {
    auto r = verify_container(g, c, options);
    row.mean_stretch = r.mean_stretch;
    row.max_stretch = r.max_stretch;
    row.mean_probes = r.mean_probes;
    if (report) *report = std::move(r);
  }
  return row;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.kind << ',' << r.params << ',' << r.build_ms << ',' << r.entries << ','
        << r.mean_stretch << ',' << r.max_stretch << ',' << r.mean_probes << '\n';
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need two or more points");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw std::invalid_argument("loglog_slope: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("loglog_slope: x values must differ");
  return sxy / sxx;
}

}  // namespace dso
