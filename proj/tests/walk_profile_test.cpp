#include "maglap/walk_profile.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "maglap/errors.hpp"
#include "maglap/oracles.hpp"
#include "test_graphs.hpp"

namespace maglap {
namespace {

using testing::make_graph;
using testing::random_graph;

TEST(WalkProfile, SingleEdge) {
  const DirectedGraph g = make_graph(2, {{0, 1}});
  const WalkProfile from0 = walk_profile(g, 0, 1);
  const WalkProfile from1 = walk_profile(g, 1, 1);
  EXPECT_EQ(from0.at(1, 1, 1), 1.0);
  EXPECT_EQ(from0.at(1, 0, 1), 0.0);
  EXPECT_EQ(from1.at(1, 0, 0), 1.0);
  EXPECT_EQ(from1.at(1, 1, 0), 0.0);
}

TEST(WalkProfile, CommonPredecessorExample) {
  const DirectedGraph g = make_graph(3, {{0, 2}, {1, 2}});
  const WalkProfile wp = walk_profile(g, 0, 6);
  for (std::size_t l = 1; l <= 6; ++l) EXPECT_EQ(wp.at(l, l, 1), 0.0);
  EXPECT_EQ(wp.at(2, 1, 1), 1.0);  // 0 -> 2 <- 1
}

TEST(WalkProfile, LengthZeroIsIndicator) {
  const DirectedGraph g = random_graph(1, 5, 5);
  for (std::size_t u = 0; u < 5; ++u) {
    const WalkProfile wp = walk_profile(g, u, 0);
    for (std::size_t v = 0; v < 5; ++v) EXPECT_EQ(wp.at(0, 0, v), u == v ? 1.0 : 0.0);
  }
}

TEST(WalkProfile, EntriesAboveDiagonalAreZero) {
  const WalkProfile wp = walk_profile(random_graph(2, 6, 6), 0, 3);
  EXPECT_EQ(wp.at(2, 3, 0), 0.0);
  EXPECT_EQ(wp.at(0, 1, 4), 0.0);
}

TEST(WalkProfile, DirectedTriangleClosedWalks) {
  const DirectedGraph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  const WalkProfile wp = walk_profile(g, 0, 3);
  EXPECT_EQ(wp.at(3, 3, 0), 1.0);
  EXPECT_EQ(wp.at(3, 0, 0), 1.0);
  EXPECT_EQ(enumerate_walks(g, 0, 3), wp);
}

TEST(WalkProfile, PhiTwoOneIdentity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DirectedGraph g = random_graph(seed, 3, 10);
    const Eigen::MatrixXd a = testing::to_eigen(g.weight_matrix());
    const Eigen::MatrixXd expected = a * a.transpose() + a.transpose() * a;
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const WalkProfile wp = walk_profile(g, u, 2);
      for (std::size_t v = 0; v < g.node_count(); ++v)
        EXPECT_EQ(wp.at(2, 1, v), expected(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)));
    }
  }
}

TEST(WalkProfile, MatchesEnumerationExactly) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DirectedGraph g = random_graph(seed, 2, 8);
    const std::size_t L = 1 + seed % 5;
    for (std::size_t u = 0; u < g.node_count(); ++u)
      ASSERT_EQ(walk_profile(g, u, L), enumerate_walks(g, u, L)) << "seed " << seed;
  }
}

TEST(WalkProfile, WeightedMatchesEnumeration) {
  const DirectedGraph g(4, {{0, 1, 0.5}, {1, 2, 2.0}, {3, 1, 1.5}, {2, 0, 0.25}});
  for (std::size_t u = 0; u < 4; ++u) {
    const WalkProfile dp = walk_profile(g, u, 5);
    const WalkProfile brute = enumerate_walks(g, u, 5);
    for (std::size_t l = 0; l <= 5; ++l)
      for (std::size_t k = 0; k <= l; ++k)
        for (std::size_t v = 0; v < 4; ++v) EXPECT_NEAR(dp.at(l, k, v), brute.at(l, k, v), 1e-12);
  }
}

TEST(WalkProfile, EnumerationLimits) {
  EXPECT_THROW(enumerate_walks(random_graph(0, 13, 13), 0, 2), ParameterError);
  EXPECT_THROW(enumerate_walks(make_graph(2, {{0, 1}}), 0, 9), ParameterError);
}

TEST(WalkProfile, IntegerCountsOnUnweightedGraphs) {
  const DirectedGraph g = random_graph(8, 10, 10);
  const WalkProfile wp = walk_profile(g, 3, 6);
  for (std::size_t l = 0; l <= 6; ++l)
    for (std::size_t k = 0; k <= l; ++k)
      for (std::size_t v = 0; v < 10; ++v) {
        EXPECT_GE(wp.at(l, k, v), 0.0);
        EXPECT_EQ(wp.at(l, k, v), std::round(wp.at(l, k, v)));
      }
}

TEST(WalkProfile, DiagonalSymmetryAndTransposeDuality) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DirectedGraph g = random_graph(seed, 3, 9);
    const DirectedGraph r = g.reversed();
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const WalkProfile wp = walk_profile(g, u, 5);
      const WalkProfile rev = walk_profile(r, u, 5);
      for (std::size_t l = 0; l <= 5; ++l)
        for (std::size_t k = 0; k <= l; ++k) {
          EXPECT_EQ(wp.at(l, k, u), wp.at(l, l - k, u));
          for (std::size_t v = 0; v < g.node_count(); ++v)
            EXPECT_EQ(rev.at(l, k, v), wp.at(l, l - k, v));
        }
    }
  }
}

TEST(WalkProfile, NormalizedConservesProbability) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DirectedGraph g = largest_weakly_connected_component(random_graph(seed, 4, 12)).graph;
    if (g.node_count() < 2) continue;
    const WalkProfile wp = walk_profile(g, 0, 6, true);
    for (std::size_t l = 0; l <= 6; ++l) {
      double total = 0.0;
      for (std::size_t k = 0; k <= l; ++k)
        for (std::size_t v = 0; v < g.node_count(); ++v) total += wp.at(l, k, v);
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(WalkProfile, NormalizedRejectsZeroDegree) {
  EXPECT_THROW(walk_profile(make_graph(3, {{0, 1}}), 0, 2, true), PreconditionError);
}

TEST(PathDistances, PathAndDiamond) {
  const DirectedGraph path = make_graph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(shortest_path_distance(path, 0, 2), 2u);
  EXPECT_EQ(longest_path_distance(path, 0, 2), 2u);
  EXPECT_EQ(shortest_path_distance(path, 2, 0), std::nullopt);

  const DirectedGraph diamond = make_graph(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(shortest_path_distance(diamond, 0, 3), 1u);
  EXPECT_EQ(longest_path_distance(diamond, 0, 3), 2u);
}

TEST(PathDistances, SearchBoundIsRespected) {
  const DirectedGraph path = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(shortest_path_distance(path, 0, 3, 2), std::nullopt);
  EXPECT_EQ(shortest_path_distance(path, 0, 3, 3), 3u);
}

TEST(PathDistances, LongestRequiresAcyclic) {
  EXPECT_THROW(longest_path_distance(make_graph(2, {{0, 1}, {1, 0}}), 0, 1), PreconditionError);
}

TEST(PathDistances, MatchClassicalOracles) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const DirectedGraph g = random_graph(seed, 2, 10);
    const bool acyclic = is_acyclic(g);
    for (std::size_t u = 0; u < g.node_count(); ++u)
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        ASSERT_EQ(shortest_path_distance(g, u, v), oracle::bfs_distance(g, u, v));
        if (acyclic) ASSERT_EQ(longest_path_distance(g, u, v), oracle::dag_longest_path(g, u, v));
      }
  }
}

TEST(PathDistances, ForwardCountsAreProfileDiagonal) {
  const DirectedGraph g = random_graph(4, 7, 7);
  const WalkProfile wp = walk_profile(g, 2, 5);
  const std::vector<double> fwd = forward_walk_counts(g, 2, 4, 5);
  for (std::size_t l = 0; l <= 5; ++l) EXPECT_EQ(fwd[l], wp.at(l, l, 4));
}

TEST(Oracles, HandCases) {
  const DirectedGraph diamond = make_graph(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(oracle::bfs_distance(diamond, 0, 3), 1u);
  EXPECT_EQ(oracle::bfs_distance(diamond, 3, 0), std::nullopt);
  EXPECT_EQ(oracle::bfs_distance(diamond, 2, 2), 0u);
  EXPECT_EQ(oracle::dag_longest_path(diamond, 0, 3), 2u);
  EXPECT_EQ(oracle::dag_longest_path(diamond, 1, 2), std::nullopt);
}

}  // namespace
}  // namespace maglap
