#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dsoracle/apasp.hpp"
#include "dsoracle/exact.hpp"
#include "dsoracle/generate.hpp"
#include "test_util.hpp"

namespace dso {
namespace {

SampleHierarchy forced_hierarchy(Vertex n, std::vector<Vertex> top) {
  SampleHierarchy h;
  h.k = 2;
  h.levels.resize(2);
  h.rank.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) h.levels[0].push_back(v);
  for (Vertex v : top) h.rank[v] = 1;
  h.levels[1] = std::move(top);
  return h;
}

TEST(Hierarchy, DeterministicAndNested) {
  auto a = sample_hierarchy(300, 3, 9);
  auto b = sample_hierarchy(300, 3, 9);
  EXPECT_EQ(a.levels, b.levels);
  ASSERT_EQ(a.levels.size(), 3u);
  EXPECT_EQ(a.levels[0].size(), 300u);
  for (std::int32_t i = 1; i < 3; ++i) {
    EXPECT_TRUE(std::includes(a.levels[i - 1].begin(), a.levels[i - 1].end(), a.levels[i].begin(), a.levels[i].end()));
  }
  EXPECT_FALSE(a.levels[2].empty());
  EXPECT_THROW(sample_hierarchy(10, 1, 1), std::invalid_argument);
}

TEST(Hierarchy, TopLevelNearSqrtN) {
  double total = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) total += static_cast<double>(sample_hierarchy(400, 2, seed).levels[1].size());
  EXPECT_NEAR(total / 40, 20.0, 3.0);
}

TEST(Hierarchy, SmallInstancesNeverEmptyOnTop) {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    auto h = sample_hierarchy(4, 2, seed);
    EXPECT_FALSE(h.levels[1].empty());
    EXPECT_EQ(h.levels.size(), 2u);
  }
}

TEST(Ball, FourCycleForcedSample) {
  Graph g = testing::four_cycle();
  auto h = forced_hierarchy(4, {2});
  auto b = ball(g, h, 0, 0);
  EXPECT_EQ(b.bound, 2);
  EXPECT_EQ(b.members, (std::vector<Vertex>{0, 1, 3}));
  // Top level: B is empty, so the ball is all of A_1.
  EXPECT_EQ(ball(g, h, 0, 1).members, (std::vector<Vertex>{2}));
  EXPECT_EQ(ball(g, h, 0, 1).bound, kInf);
  // Losing a: c is still closer than the sample.
  EXPECT_EQ(ball(g, h, 0, 0, 1).members, (std::vector<Vertex>{0, 3}));
}

TEST(Ball, SampledVertexHasEmptyTruncatedBalls) {
  Graph g = generate_gnp(30, 0.2, 2);
  auto h = sample_hierarchy(30, 2, 5);
  const Vertex v = h.levels[1].front();
  for (Vertex x = 0; x < 30; ++x) {
    if (x == v) continue;
    EXPECT_TRUE(truncated_ball(g, h, v, 0, x, 0.5).members.empty());
  }
  const Vertex plain = [&] {
    for (Vertex u = 0; u < 30; ++u) {
      if (h.rank[u] == 0) return u;
    }
    return Vertex{0};
  }();
  auto b = ball(g, h, plain, 0);
  EXPECT_TRUE(std::find(b.members.begin(), b.members.end(), plain) != b.members.end());
}

TEST(Ball, ZeroEpsilonMatchesPlainFaultBall) {
  Graph g = generate_gnp(40, 0.15, 3);
  auto h = sample_hierarchy(40, 3, 3);
  for (Vertex v = 0; v < 40; v += 3) {
    for (Vertex x = -1; x < 40; ++x) {
      if (x == v) continue;
      for (std::int32_t i = 0; i < 3; ++i) {
        ASSERT_EQ(truncated_ball(g, h, v, i, x, 0).members, ball(g, h, v, i, x).members);
      }
    }
  }
}

TEST(Cluster, InverseOfTruncatedBall) {
  Graph g = generate_gnp(36, 0.12, 4);
  auto h = sample_hierarchy(36, 2, 4);
  const double eps = 0.5;
  for (Vertex x = -1; x < 36; ++x) {
    const auto bound = nearest_sample(g, h.levels[1], x).dist;
    std::vector<std::vector<Vertex>> from_balls(36);
    for (Vertex v = 0; v < 36; ++v) {
      if (v == x) continue;
      for (Vertex w : truncated_ball(g, h, v, 0, x, eps).members) from_balls[w].push_back(v);
    }
    for (Vertex w = 0; w < 36; ++w) {
      ASSERT_EQ(truncated_cluster(g, w, x, eps, bound), from_balls[w]) << "w " << w << " x " << x;
    }
  }
}

TEST(NearestSample, SmallestIdOnTies) {
  Graph g = testing::four_cycle();
  std::vector<Vertex> set{1, 3};
  auto near = nearest_sample(g, set);
  EXPECT_EQ(near.vertex[0], 1);
  EXPECT_EQ(near.vertex[2], 1);
  EXPECT_EQ(near.dist[2], 1);
  auto cut = nearest_sample(g, set, 1);
  EXPECT_EQ(cut.vertex[2], 3);
}

TEST(TruncatedBallUnion, PathRestrictionAndWitnessCover) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Graph g = generate_gnp(40, 0.2, seed);
    auto h = sample_hierarchy(40, 2, seed);
    for (Vertex v = 0; v < 40; ++v) {
      auto u = truncated_ball_union(g, h, v, 0, 0.5);
      ASSERT_EQ(u.path_failures, u.all_failures) << "v " << v;
      ASSERT_TRUE(u.covered()) << "v " << v;
      const double l = static_cast<double>(u.witness.path.size());
      EXPECT_LE(static_cast<double>(u.witness.chosen.size()), std::max(1.0, l));
    }
  }
}

TEST(TruncatedBallUnion, WitnessGreedyWithZeroEpsilon) {
  Graph g = generate_gnp(40, 0.1, 7);
  auto h = sample_hierarchy(40, 3, 7);
  for (Vertex v = 0; v < 40; ++v) {
    for (std::int32_t i = 0; i < 2; ++i) {
      auto u = truncated_ball_union(g, h, v, i, 0);
      ASSERT_TRUE(u.covered());
      ASSERT_TRUE(std::is_sorted(u.witness.chosen.begin(), u.witness.chosen.end()));
    }
  }
}

TEST(TruncatedBallUnion, X1X2Lemma) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = generate_gnp(50, 0.06, seed);
    auto h = sample_hierarchy(50, 2, seed + 100);
    for (Vertex v = 0; v < 50; ++v) {
      auto ws = witness_set(g, h, v, 0, 0.5);
      const auto l = static_cast<std::int32_t>(ws.path.size()) - 1;
      for (std::int32_t j1 = 1; j1 <= l; ++j1) {
        for (std::int32_t j2 = j1 + 1; j2 <= l; ++j2) {
          bool premise = false;
          const bool holds = check_x1_x2(g, h, ws, v, 0, 0.5, j1, j2, &premise);
          if (!premise) continue;
          ++checked;
          ASSERT_TRUE(holds) << "v " << v << " j1 " << j1 << " j2 " << j2;
        }
      }
    }
  }
  EXPECT_GT(checked, 20u);
}

void expect_apasp_stretch(const Graph& g, std::int32_t k, double eps, std::uint64_t seed) {
  auto o = ApaspOracle::build(g, k, eps, seed);
  AllPairsReplacement exact(g, 4);
  const Vertex n = g.num_vertices();
  for (Vertex x = -1; x < n; ++x) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (u == x || v == x) continue;
        ApaspQueryInfo info;
        auto a = o.query(u, v, x, true, &info);
        const Weight e = exact.at(u, v, x);
        ASSERT_LE(info.probes, 2 * k);
        if (e == kInf) {
          ASSERT_FALSE(a.reachable());
          continue;
        }
        ASSERT_GE(a.distance, e);
        ASSERT_LE(a.distance, (2 * k - 1) * (1 + eps) * e) << u << " " << v << " " << x;
        ASSERT_TRUE(a.path);
        ASSERT_TRUE(is_valid_walk(g, *a.path, x));
        ASSERT_EQ(a.path->vertices.front(), u);
        ASSERT_EQ(a.path->vertices.back(), v);
      }
    }
  }
}

TEST(Apasp, FourCycle) { expect_apasp_stretch(testing::four_cycle(), 2, 0.5, 1); }

TEST(Apasp, StretchAndProbesOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = generate_gnp(45, 0.1, seed);
    expect_apasp_stretch(g, 2, 0.5, seed);
    expect_apasp_stretch(g, 3, 0.5, seed);
  }
  expect_apasp_stretch(generate_cycle(30), 2, 0.5, 3);
  expect_apasp_stretch(generate_grid(5, 6), 3, 0.25, 3);
}

TEST(Apasp, ClustersMatchBruteForce) {
  Graph g = generate_gnp(30, 0.15, 8);
  auto o = ApaspOracle::build(g, 2, 0.5, 8);
  const auto& h = o.hierarchy();
  const double eps = 0.5 / 8;
  for (const auto& c : o.clusters()) {
    if (c.level == h.k - 1) {
      EXPECT_EQ(c.vertices.size(), 30u);
      continue;
    }
    std::vector<char> member(30, 0);
    for (Vertex x = -1; x < 30; ++x) {
      for (Vertex v = 0; v < 30; ++v) {
        if (v == x || c.center == x) continue;
        auto b = truncated_ball(g, h, v, c.level, x, eps).members;
        if (std::binary_search(b.begin(), b.end(), c.center)) member[v] = 1;
      }
    }
    std::vector<Vertex> expect;
    for (Vertex v = 0; v < 30; ++v) {
      if (member[v]) expect.push_back(v);
    }
    EXPECT_EQ(c.vertices, expect);
  }
}

TEST(Apasp, EdgeCases) {
  auto o = ApaspOracle::build(generate_gnp(20, 0.3, 2), 2, 0.5, 2);
  EXPECT_EQ(o.query(3, 3, 5).distance, 0);
  EXPECT_THROW(o.query(3, 4, 3), std::invalid_argument);
  EXPECT_THROW(o.query(3, 40, 1), std::invalid_argument);
  EXPECT_THROW(ApaspOracle::build(testing::diamond_graph(), 2, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(ApaspOracle::build(Graph(3, {{0, 1, 1}}), 2, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(ApaspOracle::build(generate_cycle(5), 1, 0.5, 1), std::invalid_argument);
}

}  // namespace
}  // namespace dso
