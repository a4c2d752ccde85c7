#include <gtest/gtest.h>

#include <cmath>

#include "dsoracle/exact.hpp"
#include "dsoracle/generate.hpp"
#include "dsoracle/sssp3.hpp"
#include "test_util.hpp"

namespace dso {
namespace {

TEST(Decomposition, PathGraphIsOneChain) {
  auto t = shortest_path_tree(testing::unit_path(6), 0);
  auto d = decompose_tree(t);
  ASSERT_EQ(d.paths().size(), 1u);
  EXPECT_EQ(d.paths()[0].vertices, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(d.max_depth(), 0);
}

TEST(Decomposition, StarHangsEveryOtherLeaf) {
  auto t = shortest_path_tree(generate_star(6), 0);
  auto d = decompose_tree(t);
  EXPECT_EQ(d.paths().size(), 5u);
  EXPECT_EQ(d.paths()[0].vertices, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(hanging_roots(t, 0).size(), 4u);
}

TEST(Decomposition, CompleteBinaryTree) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < 15; ++v) e.push_back({(v - 1) / 2, v, 1});
  auto t = shortest_path_tree(Graph(15, e), 0);
  auto d = decompose_tree(t);
  const auto& top = d.paths()[0].vertices;
  ASSERT_EQ(top.size(), 4u);
  std::vector<Vertex> sizes;
  for (std::size_t i = 0; i + 1 < top.size(); ++i) {
    for (Vertex h : hanging_roots(t, top[i])) sizes.push_back(t.subtree_size(h));
  }
  EXPECT_EQ(sizes, (std::vector<Vertex>{7, 3, 1}));
  EXPECT_EQ(d.max_depth(), 3);
}

// Every vertex lies on exactly one chain, below at most log2(n) light edges.
TEST(Decomposition, PartitionAndDepthBound) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = generate_gnp(300, 0.02, seed, {1, 10});
    auto t = shortest_path_tree(g, 0);
    auto d = decompose_tree(t);
    std::vector<int> seen(300, 0);
    for (std::size_t p = 0; p < d.paths().size(); ++p) {
      const auto& path = d.paths()[p].vertices;
      for (std::size_t i = 0; i < path.size(); ++i) {
        ++seen[path[i]];
        EXPECT_EQ(d.path_of(path[i]), static_cast<std::int32_t>(p));
        EXPECT_EQ(d.position(path[i]), static_cast<std::int32_t>(i));
        if (i > 0) EXPECT_EQ(t.parent(path[i]), path[i - 1]);
      }
    }
    for (int c : seen) EXPECT_EQ(c, 1);
    EXPECT_LE(d.max_depth(), std::log2(300.0));
  }
}

TEST(Sssp3, DiamondRecordAndJump) {
  auto o = Sssp3Oracle::build(testing::diamond_graph(), 0);
  const FailureRecord* a = o.record(1);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->down_child, 2);
  EXPECT_TRUE(a->side_tree.empty());
  ASSERT_TRUE(a->jump);
  EXPECT_EQ(a->jump->from, 3);
  EXPECT_EQ(a->jump->to, 2);
  EXPECT_EQ(a->jump->cost, 4);
}

TEST(Sssp3, FourCycleJump) {
  auto o = Sssp3Oracle::build(testing::four_cycle(), 0);
  const FailureRecord* a = o.record(1);
  ASSERT_NE(a, nullptr);
  ASSERT_TRUE(a->jump);
  EXPECT_EQ(a->jump->from, 3);
  EXPECT_EQ(a->jump->to, 2);
  EXPECT_EQ(a->jump->cost, 2);
}

TEST(Sssp3, DiamondQueries) {
  auto o = Sssp3Oracle::build(testing::diamond_graph(), 0);
  auto b = o.query(2, 1);
  EXPECT_EQ(b.distance, 4);
  ASSERT_TRUE(b.path);
  EXPECT_EQ(b.path->vertices, (std::vector<Vertex>{0, 3, 2}));
  EXPECT_EQ(o.query(3, 1).distance, 3);
  EXPECT_EQ(o.query(2, kNoVertex).distance, 2);
  EXPECT_THROW(o.query(1, 1), std::invalid_argument);
  EXPECT_THROW(o.query(1, 0), std::invalid_argument);
}

TEST(Sssp3, CutVertexUnreachable) {
  auto o = Sssp3Oracle::build(testing::unit_path(4), 0);
  auto a = o.query(3, 1);
  EXPECT_FALSE(a.reachable());
  EXPECT_FALSE(a.path);
}

// exact <= reported <= 3 exact; returned walks avoid x and have the
// reported weight; queries outside the failed subtree are exact.
TEST(Sssp3, StretchAndPathsOnRandomWeightedGraphs) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<Vertex>(rng.uniform_int(2, 90));
    Graph g = generate_gnp(n, std::min(1.0, 5.0 / n), seed, {1, 10});
    const auto r = static_cast<Vertex>(rng.uniform_int(0, n - 1));
    auto o = Sssp3Oracle::build(g, r);
    const auto& t = o.tree();
    for (Vertex x = 0; x < n; ++x) {
      if (x == r) continue;
      auto ref = testing::naive_distances(g, r, x);
      for (Vertex v = 0; v < n; ++v) {
        if (v == x) continue;
        auto a = o.query(v, x);
        if (ref[v] == kInf) {
          ASSERT_FALSE(a.reachable()) << "seed " << seed << " v " << v << " x " << x;
          continue;
        }
        ASSERT_GE(a.distance, ref[v]);
        ASSERT_LE(a.distance, 3 * ref[v]) << "seed " << seed << " v " << v << " x " << x;
        ASSERT_TRUE(a.path);
        ASSERT_TRUE(is_valid_walk(g, *a.path, x)) << "seed " << seed << " v " << v << " x " << x;
        ASSERT_EQ(a.path->vertices.front(), r);
        ASSERT_EQ(a.path->vertices.back(), v);
        if (t.lca(v, x) != x) ASSERT_EQ(a.distance, t.dist(v));
      }
    }
  }
}

// The jump edge realizes the exact delta(r, c, x); the above-only side tree
// never undercuts the fail tree and both stay within the bounds.
TEST(Sssp3, RecordInvariants) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Graph g = generate_gnp(80, 0.06, seed, {1, 10});
    auto o = Sssp3Oracle::build(g, 0);
    const auto& t = o.tree();
    for (Vertex x = 1; x < 80; ++x) {
      const FailureRecord* rec = o.record(x);
      ASSERT_NE(rec, nullptr);
      auto ref = testing::naive_distances(g, 0, x);
      if (rec->down_child != kNoVertex) {
        const Weight exact_c = ref[rec->down_child];
        ASSERT_EQ(rec->jump ? rec->jump->cost : kInf, exact_c);
      }
      ASSERT_EQ(rec->fail_tree.size(), rec->side_tree.size());
      for (std::size_t i = 0; i < rec->fail_tree.size(); ++i) {
        const Vertex v = t.at_preorder(rec->side_begin + static_cast<std::int32_t>(i));
        ASSERT_LE(rec->fail_tree[i].dist, rec->side_tree[i].dist);
        if (ref[v] == kInf) continue;
        ASSERT_GE(rec->fail_tree[i].dist, ref[v]);
        ASSERT_LE(rec->fail_tree[i].dist, 3 * ref[v]);
      }
    }
  }
}

TEST(Sssp3, StorageWithinLogFactor) {
  for (Vertex n : {128, 512}) {
    Graph g = generate_gnp(n, 10.0 / n, 5, {1, 10});
    auto s = Sssp3Oracle::build(g, 0).stats();
    EXPECT_EQ(s.records, static_cast<std::size_t>(n - 1));
    EXPECT_LE(s.entries, 4u * n * static_cast<std::size_t>(std::ceil(std::log2(n))));
  }
}

}  // namespace
}  // namespace dso
