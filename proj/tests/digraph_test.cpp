#include "maglap/digraph.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "maglap/errors.hpp"
#include "test_graphs.hpp"

namespace maglap {
namespace {

using testing::make_graph;

TEST(DirectedGraph, RejectsSelfLoopsDuplicatesAndBadIndices) {
  EXPECT_THROW(make_graph(2, {{0, 0}}), ParameterError);
  EXPECT_THROW(make_graph(2, {{0, 1}, {0, 1}}), ParameterError);
  EXPECT_THROW(make_graph(2, {{0, 2}}), ParameterError);
  EXPECT_NO_THROW(DirectedGraph(2, {{0, 0, 1.0}}, true));
}

TEST(DirectedGraph, FlagsAntiparallelPairs) {
  const DirectedGraph g = make_graph(3, {{2, 1}, {0, 1}, {1, 2}});
  ASSERT_TRUE(g.has_antiparallel());
  EXPECT_EQ(*g.antiparallel_pair(), (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_FALSE(make_graph(3, {{0, 1}, {1, 2}}).has_antiparallel());
  EXPECT_FALSE(without_antiparallel(g).has_antiparallel());
  EXPECT_EQ(without_antiparallel(g), make_graph(3, {{0, 1}, {1, 2}}));
}

TEST(DirectedGraph, EqualityIgnoresInsertionOrder) {
  EXPECT_EQ(make_graph(3, {{1, 2}, {0, 1}}), make_graph(3, {{0, 1}, {1, 2}}));
}

TEST(DirectedGraph, ReversedSwapsEndpoints) {
  EXPECT_EQ(make_graph(3, {{0, 1}, {1, 2}}).reversed(), make_graph(3, {{1, 0}, {2, 1}}));
}

TEST(Generate, EmptyRangeIsAnError) {
  GenSpec spec;
  spec.n_min = 0;
  spec.n_max = 0;
  EXPECT_THROW(generate(spec), ParameterError);
  spec.n_min = 5;
  spec.n_max = 4;
  EXPECT_THROW(generate(spec), ParameterError);
}

TEST(Generate, RejectsNonPositiveDegreeAndProbabilityAboveOne) {
  GenSpec spec;
  spec.n_min = spec.n_max = 5;
  spec.avg_degree = 0.0;
  EXPECT_THROW(generate(spec), ParameterError);
  spec.avg_degree = 4.5;  // p = 4.5 / 4
  EXPECT_THROW(generate(spec), ParameterError);
}

TEST(Generate, DagIsAcyclicEvenWhenDense) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec{GraphKind::dag, 5, 5, 4.0, seed};
    const DirectedGraph g = generate(spec);
    EXPECT_TRUE(is_acyclic(g));
    // p = 1: every pair consistent with the hidden order is present.
    EXPECT_EQ(g.edge_count(), 10u);
  }
}

TEST(Generate, DeterministicForSeed) {
  GenSpec spec{GraphKind::er_directed, 10, 40, 1.5, 99};
  EXPECT_EQ(generate(spec), generate(spec));
  spec.seed = 100;
  GenSpec other = spec;
  other.seed = 101;
  EXPECT_FALSE(generate(spec) == generate(other));
}

TEST(Generate, MeanOutDegreeMatchesTarget) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const DirectedGraph g = generate({GraphKind::er_directed, 30, 30, 1.5, seed});
    total += static_cast<double>(g.edge_count()) / 30.0;
  }
  EXPECT_NEAR(total / 1000.0, 1.5, 0.1);
}

TEST(Component, TieBrokenBySmallestIndex) {
  const Component c = largest_weakly_connected_component(make_graph(4, {{2, 3}, {0, 1}}));
  EXPECT_EQ(c.graph, make_graph(2, {{0, 1}}));
  EXPECT_EQ(c.original_index, (std::vector<std::size_t>{0, 1}));
}

TEST(Component, SingleNodeIsUnchanged) {
  const Component c = largest_weakly_connected_component(DirectedGraph(1));
  EXPECT_EQ(c.graph, DirectedGraph(1));
}

TEST(Component, DropsIsolatedNode) {
  const Component c =
      largest_weakly_connected_component(make_graph(4, {{0, 1}, {0, 2}}));
  EXPECT_EQ(c.graph, make_graph(3, {{0, 1}, {0, 2}}));
}

TEST(Component, PreservesRelativeOrderAndIsIdempotent) {
  const DirectedGraph g = make_graph(6, {{5, 3}, {3, 1}, {0, 2}});
  const Component c = largest_weakly_connected_component(g);
  EXPECT_EQ(c.original_index, (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_EQ(c.graph, make_graph(3, {{2, 1}, {1, 0}}));
  EXPECT_EQ(largest_weakly_connected_component(c.graph).graph, c.graph);
}

TEST(EdgeList, ParsesUnweightedAndWeighted) {
  std::istringstream a("2\n0 1\n");
  EXPECT_EQ(parse_edge_list(a), make_graph(2, {{0, 1}}));
  std::istringstream b("2\n0 1 0.5\n");
  const DirectedGraph g = parse_edge_list(b);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.edges()[0].weight, 0.5);
}

TEST(EdgeList, CommentsAndBlankLinesAreSkipped) {
  std::istringstream in("# header\n3\n\n0 1\n# mid\n1 2\n");
  EXPECT_EQ(parse_edge_list(in), make_graph(3, {{0, 1}, {1, 2}}));
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
  std::istringstream bad("3\n0 1\n1 x\n");
  try {
    parse_edge_list(bad);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream dup("3\n0 1\n1 2\n0 1\n");
  EXPECT_THROW(parse_edge_list(dup), ParseError);
  std::istringstream range("2\n0 5\n");
  EXPECT_THROW(parse_edge_list(range), ParseError);
}

TEST(EdgeList, RoundTripsThroughFile) {
  const auto path = std::filesystem::temp_directory_path() / "maglap_roundtrip.txt";
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DirectedGraph g = testing::random_graph(seed, 5, 30);
    std::vector<Edge> weighted = g.edges();
    for (std::size_t i = 0; i < weighted.size(); i += 3) weighted[i].weight = 0.1 * (i + 1);
    g = DirectedGraph(g.node_count(), weighted);
    write_edge_list(g, path);
    EXPECT_EQ(read_edge_list(path), g);
  }
  std::filesystem::remove(path);
}

TEST(TopologicalOrder, DetectsCycles) {
  EXPECT_FALSE(is_acyclic(make_graph(3, {{0, 1}, {1, 2}, {2, 0}})));
  const auto order = topological_order(make_graph(3, {{2, 1}, {1, 0}}));
  ASSERT_TRUE(order);
  EXPECT_EQ(*order, (std::vector<std::size_t>{2, 1, 0}));
}

}  // namespace
}  // namespace maglap
