#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "lowdeg/graph.hpp"

using namespace lowdeg;

TEST(Graph, SawPathsThroughOneMiddleVertex) {
  auto paths = enumerate({GraphClass::SawSD, 5, 0, 0, 2, false, false});
  ASSERT_EQ(paths.size(), 3u);
  for (int v = 3; v <= 5; ++v) {
    MultiGraph g;
    g.add(1, v);
    g.add(2, v);
    EXPECT_NE(std::find(paths.begin(), paths.end(), g), paths.end());
  }
}

TEST(Graph, GoodSwSingleEdge) {
  auto good = enumerate({GraphClass::GoodSW, 2, 1, 0, 0, true, true});
  ASSERT_EQ(good.size(), 2u);
  EXPECT_TRUE(good[0].empty());
  EXPECT_EQ(good[1], (MultiGraph{{1, 2, 1}}));
}

TEST(Graph, TreeFamilyK0) {
  auto trees = enumerate({GraphClass::TreeTk, 5, 0, 0, 0, false, false});
  EXPECT_EQ(trees.size(), 6u);
  for (const auto& t : trees) {
    EXPECT_EQ(t.size(), 2);
    EXPECT_EQ(t.degree(1), 2);
  }
}

TEST(Graph, StatsExamples) {
  auto e = graph_stats(MultiGraph{});
  EXPECT_EQ(e.edge_count, 0);
  EXPECT_EQ(e.vertex_count, 0);
  EXPECT_EQ(e.excess, 1);
  EXPECT_EQ(e.component_count, 0);
  EXPECT_EQ(e.excess_degree, 0);

  auto t = graph_stats(MultiGraph{{1, 2, 1}, {2, 3, 1}, {1, 3, 1}});
  EXPECT_EQ(t.edge_count, 3);
  EXPECT_EQ(t.vertex_count, 3);
  EXPECT_EQ(t.excess, 1);
  EXPECT_EQ(t.component_count, 1);
  EXPECT_EQ(t.excess_degree, 0);

  MultiGraph g{{1, 2, 2}, {2, 3, 1}};
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_EQ(g.degree(2), 3);
  EXPECT_EQ(g.degree(3), 1);
  EXPECT_EQ(excess_degree(g), 3);
}

TEST(Graph, LoopCountsTwiceTowardDegree) {
  MultiGraph g{{1, 1, 1}, {1, 2, 1}};
  EXPECT_EQ(g.degree(1), 3);
}

TEST(Graph, CountExamples) {
  EXPECT_EQ(count_spanning_trees(3), 3);
  EXPECT_EQ(count_by_profile({GraphClass::GoodSW, 4, 1, 0, 0, false, false}, 1, 2), 1);
  EXPECT_EQ(enumerate({GraphClass::SawSD, 6, 0, 0, 3, false, false}).size(), 12u);
  EXPECT_EQ(falling_factorial(4, 2), 12u);
}

TEST(Graph, CanonicalRoundTrip) {
  MultiGraph g{{2, 3, 2}, {1, 2, 1}, {3, 3, 1}};
  auto text = g.canonical();
  EXPECT_EQ(MultiGraph::parse(text), g);
}

TEST(Graph, EnumerationIsDuplicateFreeAndSorted) {
  auto all = enumerate({GraphClass::All, 4, 3, 0, 0, true, true});
  std::set<MultiGraph> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), all.size());
  EXPECT_EQ(all, enumerate({GraphClass::All, 4, 3, 0, 0, true, true}));
}

TEST(Graph, GoodGraphsSatisfyDefinition) {
  for (const auto& a : enumerate({GraphClass::GoodSW, 5, 4, 0, 0, true, true})) {
    if (a.empty()) continue;
    EXPECT_TRUE(a.has_vertex(1) && a.has_vertex(2));
    auto b = a.bar();
    EXPECT_TRUE(b.connected());
    for (const auto& [v, d] : b.degrees()) EXPECT_GE(d, 2);
    auto st = graph_stats(a);
    EXPECT_GE(st.excess, 0);
    EXPECT_LE(excess_degree(b), 6 * st.excess);
  }
}

TEST(Graph, SizeGuard) {
  unsetenv("LOWDEG_GUARD_OVERRIDE");
  EXPECT_THROW(enumerate({GraphClass::All, 11, 2, 0, 0, false, false}), SizeLimitError);
  EXPECT_THROW(enumerate({GraphClass::All, 4, 9, 0, 0, false, false}), SizeLimitError);
}

TEST(Graph, InconsistentFlagsRejected) {
  EXPECT_THROW(enumerate({GraphClass::GoodSBM, 4, 2, 0, 0, true, false}), ValidationError);
}
