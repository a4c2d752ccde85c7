#include <gtest/gtest.h>

#include <sstream>

#include "dsoracle/bench.hpp"
#include "dsoracle/generate.hpp"
#include "test_util.hpp"

namespace dso {
namespace {

OracleParams source_params(Vertex r, double eps = 0) {
  OracleParams p;
  p.source = r;
  p.epsilon = eps;
  return p;
}

TEST(Verify, Sssp3OnWeightedRandomGraph) {
  Graph g = generate_gnp(50, 0.2, 1, {1, 10});
  auto c = build_container(g, OracleKind::kSssp3, source_params(0));
  auto r = verify_container(g, c);
  EXPECT_TRUE(r.ok());
  EXPECT_LE(r.max_stretch, 3.0);
  // Every (v, x) with x in {none} ∪ V - r and v != x.
  EXPECT_EQ(r.queries, 50u + 49u * 49u);
  EXPECT_EQ(r.max_probes, 1);
}

TEST(Verify, SsspEpsOnTwoByTwentyGrid) {
  Graph g = generate_grid(2, 20);
  auto c = build_container(g, OracleKind::kSsspEps, source_params(0, 0.5));
  auto r = verify_container(g, c);
  EXPECT_TRUE(r.ok());
  EXPECT_LE(r.max_stretch, 1.5);
}

TEST(Verify, ThreadCountDoesNotChangeTheReport) {
  Graph g = generate_gnp(40, 0.1, 3);
  OracleParams p;
  p.k = 2;
  p.epsilon = 0.5;
  p.seed = 3;
  auto c = build_container(g, OracleKind::kApasp, p);
  VerifyOptions one;
  one.threads = 1;
  VerifyOptions many;
  many.threads = 8;
  auto a = verify_container(g, c, one);
  auto b = verify_container(g, c, many);
  EXPECT_EQ(a.queries, b.queries);
  EXPECT_EQ(a.mean_stretch, b.mean_stretch);
  EXPECT_EQ(a.mean_probes, b.mean_probes);
  EXPECT_EQ(a.histogram, b.histogram);
  EXPECT_LE(a.max_probes, 4);
}

TEST(Verify, SamplesFailuresAboveCutoff) {
  Graph g = generate_gnp(30, 0.15, 4);
  OracleParams p;
  p.k = 2;
  p.epsilon = 0.5;
  p.seed = 4;
  auto c = build_container(g, OracleKind::kApasp, p);
  VerifyOptions o;
  o.full_enumeration_cutoff = 10;
  o.sampled_failures = 5;
  auto r = verify_container(g, c, o);
  EXPECT_TRUE(r.ok());
  // Per source: no failure (30 targets) plus 5 failures (29 targets each).
  EXPECT_EQ(r.queries, 30u * (30u + 5u * 29u));
}

TEST(Verify, RejectsForeignGraph) {
  Graph g = generate_cycle(7);
  auto c = build_container(g, OracleKind::kSssp3, source_params(0));
  EXPECT_THROW(verify_container(generate_path(7), c), std::invalid_argument);
}

TEST(Bench, CsvHeaderAndRows) {
  std::ostringstream empty;
  write_bench_csv(empty, {});
  EXPECT_EQ(empty.str(), std::string(kBenchHeader) + "\n");

  std::vector<BenchRow> rows;
  for (Vertex n : {32, 64}) rows.push_back(bench_case(generate_gnp(n, 10.0 / n, 1), OracleKind::kSssp3,
                                                     source_params(0), {}, true));
  std::ostringstream out;
  write_bench_csv(out, rows);
  std::string line;
  std::istringstream in(out.str());
  std::getline(in, line);
  EXPECT_EQ(line, kBenchHeader);
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    EXPECT_NE(line.find(",sssp3,r=0,"), std::string::npos);
  }
  EXPECT_EQ(count, 2u);
  EXPECT_LE(rows[1].max_stretch, 3.0);
  EXPECT_GT(rows[1].entries, rows[0].entries);
}

TEST(Bench, ApaspProbeColumnWithinTwoK) {
  OracleParams p;
  p.k = 2;
  p.epsilon = 0.5;
  p.seed = 42;
  auto row = bench_case(generate_gnp(40, 0.15, 2), OracleKind::kApasp, p, {});
  EXPECT_LE(row.mean_probes, 4.0);
  EXPECT_EQ(row.params, "k=2;eps=0.5;seed=42");
}

TEST(Bench, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
  EXPECT_NEAR(loglog_slope({10, 100}, {5, 50}), 1.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), std::invalid_argument);
  EXPECT_THROW(loglog_slope({1, 2}, {0, 1}), std::invalid_argument);
}

TEST(Bench, HistogramCsv) {
  VerifyReport r;
  r.histogram_width = 0.5;
  r.histogram = {3, 0, 1};
  std::ostringstream out;
  write_histogram_csv(out, r);
  EXPECT_EQ(out.str(), "stretch_lo,stretch_hi,count\n1,1.5,3\n1.5,2,0\n2,2.5,1\n");
}

}  // namespace
}  // namespace dso
