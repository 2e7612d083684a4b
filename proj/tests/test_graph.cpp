#include <gtest/gtest.h>

#include <stdexcept>

#include "degseq/graph.hpp"

namespace degseq {
namespace {

TEST(PairIndex, LexicographicOrderAndInverse) {
  for (std::size_t n : {2u, 3u, 5u, 11u}) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        ASSERT_EQ(pair_index(n, i, j), expected);
        const Edge e = pair_at(n, expected);
        EXPECT_EQ(e.u, i);
        EXPECT_EQ(e.v, j);
        ++expected;
      }
    }
    EXPECT_EQ(expected, pair_count(n));
  }
}

TEST(Edge, NormalizesEndpoints) {
  const Edge e(4, 1);
  EXPECT_EQ(e.u, 1u);
  EXPECT_EQ(e.v, 4u);
  EXPECT_EQ(e, Edge(1, 4));
}

TEST(SimpleGraph, AddEdgeAndQueries) {
  SimpleGraph g(4);
  EXPECT_TRUE(g.add_edge(2, 0));
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(Edge(2, 0)));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.degrees(), (std::vector<std::uint32_t>{2, 1, 1, 0}));
  const std::vector<Edge> expected{{0, 1}, {0, 2}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(SimpleGraph, RejectsSelfLoopsAndRange) {
  SimpleGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  EXPECT_THROW(SimpleGraph::from_edges(3, dup), std::invalid_argument);
}

TEST(SimpleGraph, EqualityIgnoresInsertionOrder) {
  SimpleGraph a(4);
  a.add_edge(0, 1);
  a.add_edge(2, 3);
  a.add_edge(0, 3);
  SimpleGraph b(4);
  b.add_edge(3, 0);
  b.add_edge(3, 2);
  b.add_edge(1, 0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a < b);
  EXPECT_FALSE(b < a);
}

TEST(SimpleGraph, SubgraphWitness) {
  SimpleGraph small(4);
  small.add_edge(0, 1);
  small.add_edge(2, 3);
  SimpleGraph big(4);
  big.add_edge(0, 1);
  big.add_edge(1, 2);
  EXPECT_FALSE(small.is_subgraph_of(big));
  EXPECT_EQ(small.first_edge_not_in(big), Edge(2, 3));
  big.add_edge(2, 3);
  EXPECT_TRUE(small.is_subgraph_of(big));
  EXPECT_TRUE(SimpleGraph(4).is_subgraph_of(small));
}

}  // namespace
}  // namespace degseq
