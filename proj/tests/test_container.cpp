#include <gtest/gtest.h>

#include "dsoracle/container.hpp"
#include "dsoracle/generate.hpp"
#include "test_util.hpp"

namespace dso {
namespace {

OracleParams single_source(Vertex r, double eps = 0) {
  OracleParams p;
  p.source = r;
  p.epsilon = eps;
  return p;
}

OracleParams all_pairs(std::int32_t k, double eps, std::uint64_t seed) {
  OracleParams p;
  p.k = k;
  p.epsilon = eps;
  p.seed = seed;
  return p;
}

void expect_same_answers(const Graph& g, const OracleContainer& a, const OracleContainer& b) {
  const Vertex n = g.num_vertices();
  const bool pairs = a.kind == OracleKind::kApasp;
  for (Vertex x = -1; x < n; ++x) {
    for (Vertex u = 0; u < (pairs ? n : 1); ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (v == x || u == x || (!pairs && x == a.params.source)) continue;
        std::int32_t pa = 0;
        std::int32_t pb = 0;
        auto ra = query_container(a, u, v, x, true, &pa);
        auto rb = query_container(b, u, v, x, true, &pb);
        ASSERT_EQ(ra.distance, rb.distance) << u << " " << v << " " << x;
        ASSERT_EQ(ra.path.has_value(), rb.path.has_value());
        if (ra.path) ASSERT_EQ(ra.path->vertices, rb.path->vertices);
        ASSERT_EQ(pa, pb);
      }
    }
  }
}

void expect_round_trip(const Graph& g, OracleKind kind, const OracleParams& p) {
  auto built = build_container(g, kind, p);
  const std::string first = save_container(built);
  auto loaded = load_container(first, &g);
  EXPECT_EQ(loaded.kind, kind);
  EXPECT_EQ(loaded.params, p);
  EXPECT_EQ(save_container(loaded), first);
  EXPECT_EQ(entry_count(loaded), entry_count(built));
  expect_same_answers(g, built, loaded);
}

TEST(Container, RoundTripSssp3) {
  WeightRange w{1, 10};
  expect_round_trip(generate_gnp(30, 0.15, 3, w), OracleKind::kSssp3, single_source(4));
  expect_round_trip(testing::diamond_graph(), OracleKind::kSssp3, single_source(0));
}

TEST(Container, RoundTripSsspEps) {
  expect_round_trip(generate_gnp(40, 0.08, 5), OracleKind::kSsspEps, single_source(0, 0.5));
  expect_round_trip(generate_grid(4, 6), OracleKind::kSsspEps, single_source(7, 0.25));
}

TEST(Container, RoundTripApasp) {
  expect_round_trip(generate_gnp(25, 0.2, 6), OracleKind::kApasp, all_pairs(2, 0.5, 6));
  expect_round_trip(generate_gnp(25, 0.2, 7), OracleKind::kApasp, all_pairs(3, 0.5, 7));
}

TEST(Container, RebuildIsByteIdentical) {
  Graph g = generate_gnp(40, 0.1, 9);
  for (auto [kind, p] : {std::pair{OracleKind::kSssp3, single_source(1)},
                         std::pair{OracleKind::kSsspEps, single_source(1, 0.5)},
                         std::pair{OracleKind::kApasp, all_pairs(2, 0.5, 42)}}) {
    EXPECT_EQ(save_container(build_container(g, kind, p)), save_container(build_container(g, kind, p)));
  }
}

TEST(Container, UnreachableDistancesAreNull) {
  Graph g(4, {{0, 1, 2}, {2, 3, 1}});
  auto c = build_container(g, OracleKind::kSssp3, single_source(0));
  const auto text = save_container(c);
  EXPECT_NE(text.find("null"), std::string::npos);
  EXPECT_EQ(text.find("inf"), std::string::npos);
  auto back = load_container(text, &g);
  EXPECT_FALSE(query_container(back, 0, 3, kNoVertex).reachable());
}

ContainerError::Reason load_failure(const std::string& text, const Graph* g = nullptr) {
  try {
    load_container(text, g);
  } catch (const ContainerError& e) {
    return e.reason();
  }
  ADD_FAILURE() << "load succeeded";
  return ContainerError::Reason::kFormat;
}

TEST(Container, CorruptedPayloadIsFingerprintError) {
  Graph g = generate_cycle(8);
  auto text = save_container(build_container(g, OracleKind::kSssp3, single_source(0)));
  const auto at = text.find("\"down_child\":");
  ASSERT_NE(at, std::string::npos);
  char& digit = text[at + 13];
  digit = digit == '1' ? '2' : '1';
  EXPECT_EQ(load_failure(text, &g), ContainerError::Reason::kFingerprint);
}

TEST(Container, WrongGraphIsFingerprintError) {
  Graph g = generate_cycle(8);
  Graph other = generate_path(8);
  auto text = save_container(build_container(g, OracleKind::kSssp3, single_source(0)));
  EXPECT_EQ(load_failure(text, &other), ContainerError::Reason::kFingerprint);
  EXPECT_NO_THROW(load_container(text));
}

TEST(Container, VersionAndSyntaxErrors) {
  Graph g = generate_cycle(5);
  auto text = save_container(build_container(g, OracleKind::kSssp3, single_source(0)));
  auto bumped = text;
  bumped.replace(bumped.find("\"format_version\":1"), 18, "\"format_version\":2");
  EXPECT_EQ(load_failure(bumped), ContainerError::Reason::kFormat);
  EXPECT_EQ(load_failure("{not json"), ContainerError::Reason::kFormat);
  EXPECT_EQ(load_failure("{}"), ContainerError::Reason::kFormat);
  EXPECT_EQ(load_failure(text.substr(0, text.size() / 2)), ContainerError::Reason::kFormat);
}

TEST(Container, KindNamesAndBounds) {
  EXPECT_EQ(parse_oracle_kind("sssp-eps"), OracleKind::kSsspEps);
  EXPECT_EQ(to_string(OracleKind::kApasp), "apasp");
  EXPECT_THROW(parse_oracle_kind("exact"), std::invalid_argument);
  Graph g = generate_gnp(20, 0.3, 1);
  EXPECT_DOUBLE_EQ(stretch_bound(build_container(g, OracleKind::kApasp, all_pairs(3, 0.5, 1))), 7.5);
  EXPECT_DOUBLE_EQ(stretch_bound(build_container(g, OracleKind::kSsspEps, single_source(0, 0.25))), 1.25);
}

}  // namespace
}  // namespace dso
