#pragma once

// Reference implementations that avoid the walk-profile and spectral code
// paths. Used by the verification suite and the tests.

#include <cstddef>
#include <optional>

#include "maglap/digraph.hpp"
#include "maglap/matrix.hpp"

namespace maglap::oracle {

/// Directed BFS hop distance from u to v.
std::optional<std::size_t> bfs_distance(const DirectedGraph& g, std::size_t u, std::size_t v);

/// Longest directed path (in edges) from u to v by DP over a topological
/// order. Throws PreconditionError on cyclic graphs.
std::optional<std::size_t> dag_longest_path(const DirectedGraph& g, std::size_t u, std::size_t v);

/// I - D^{-1/2} (A + A^T) D^{-1/2} with D the row sums of A + A^T, built
/// directly in real arithmetic.
RMatrix symmetrized_laplacian(const DirectedGraph& g);

}  // namespace maglap::oracle
