#include <gtest/gtest.h>

#include <sstream>

#include "dsoracle/exact.hpp"
#include "dsoracle/generate.hpp"
#include "test_util.hpp"

namespace dso {
namespace {

TEST(ExactReplacement, FourCycleDetour) {
  Graph g = testing::four_cycle();
  auto a = exact_replacement(g, 0, 2, 1);
  EXPECT_EQ(a.distance, 2);
  ASSERT_TRUE(a.path);
  EXPECT_EQ(a.path->vertices, (std::vector<Vertex>{0, 3, 2}));
}

TEST(ExactReplacement, CutVertexDisconnects) {
  auto a = exact_replacement(testing::unit_path(3), 0, 2, 1);
  EXPECT_FALSE(a.reachable());
  EXPECT_FALSE(a.path);
}

TEST(ExactReplacement, RejectsFailedEndpoint) {
  Graph g = testing::four_cycle();
  EXPECT_THROW(exact_replacement(g, 1, 2, 1), std::invalid_argument);
  EXPECT_THROW(exact_replacement(g, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(exact_replacement(g, 0, 1, 7), std::invalid_argument);
}

TEST(ExactReplacement, NoFailureIsTheIntactPath) {
  auto a = exact_replacement(testing::four_cycle(), 0, 2, kNoVertex);
  EXPECT_EQ(a.distance, 2);
  ASSERT_TRUE(a.path);
  EXPECT_EQ(a.path->vertices, (std::vector<Vertex>{0, 1, 2}));
}

TEST(ReplacementTable, FourCycleEntries) {
  auto t = all_replacement_distances(testing::four_cycle(), 0, 2);
  EXPECT_EQ(t.at(2, 1), 2);
  EXPECT_EQ(t.at(2, 3), 2);
  EXPECT_EQ(t.at(3, 1), 1);
}

TEST(ReplacementTable, StarLeavesUnaffectedByOtherLeaves) {
  Graph g = generate_star(5);
  auto t = all_replacement_distances(g, 1, 1);
  EXPECT_EQ(t.at(2, 3), 2);
  EXPECT_EQ(t.at(2, 0), kInf);
}

TEST(ReplacementTable, CsvSkipsSourceAndDiagonal) {
  auto t = all_replacement_distances(testing::unit_path(3), 0);
  std::ostringstream out;
  t.write_csv(out);
  EXPECT_EQ(out.str(), "v,x,distance\n0,1,0\n2,1,inf\n0,2,0\n1,2,1\n");
}

// delta(r,v,x) >= d(r,v); equals the naive masked search; symmetric in the
// endpoints; triangle inequality through any third vertex that is not x.
TEST(ReplacementTable, Invariants) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Graph g = generate_gnp(40, 0.1, seed, seed % 2 ? WeightRange{1, 5} : WeightRange{});
    AllPairsReplacement all(g, 4);
    const Vertex n = g.num_vertices();
    for (Vertex x = 0; x < n; x += 3) {
      for (Vertex u = 0; u < n; ++u) {
        if (u == x) continue;
        auto ref = testing::naive_distances(g, u, x);
        for (Vertex v = 0; v < n; ++v) {
          if (v == x) continue;
          ASSERT_EQ(all.at(u, v, x), ref[v]);
          ASSERT_GE(all.at(u, v, x), all.at(u, v, kNoVertex));
          ASSERT_EQ(all.at(u, v, x), all.at(v, u, x));
        }
      }
      for (Vertex u = 0; u < n; u += 5) {
        for (Vertex v = 1; v < n; v += 7) {
          for (Vertex w = 2; w < n; w += 11) {
            if (u == x || v == x || w == x) continue;
            ASSERT_LE(all.at(u, v, x), all.at(u, w, x) + all.at(w, v, x));
          }
        }
      }
    }
    auto table = all_replacement_distances(g, 0, 3);
    for (Vertex x = 1; x < n; ++x) {
      for (Vertex v = 0; v < n; ++v) {
        if (v != x) ASSERT_EQ(table.at(v, x), all.at(0, v, x));
      }
    }
  }
}

TEST(ExactReplacement, PathIsValidAndAvoidsFailure) {
  Graph g = generate_gnp(60, 0.08, 3, {1, 10});
  for (Vertex x = 1; x < 60; x += 4) {
    for (Vertex v = 0; v < 60; v += 5) {
      if (v == x) continue;
      auto a = exact_replacement(g, 0, v, x);
      if (!a.reachable()) continue;
      ASSERT_TRUE(a.path);
      EXPECT_TRUE(is_valid_walk(g, *a.path, x));
      EXPECT_EQ(a.path->length, a.distance);
    }
  }
}

}  // namespace
}  // namespace dso
