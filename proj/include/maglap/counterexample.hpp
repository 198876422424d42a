#pragma once

#include <cstddef>
#include <optional>

#include "maglap/digraph.hpp"
#include "maglap/matrix.hpp"
#include "maglap/spectral.hpp"

namespace maglap {

inline constexpr double kCounterexampleMinQ = 0.05;
inline constexpr double kCounterexampleMaxQ = 0.45;

/// Weight read back from one magnetic-adjacency entry at potential q:
///   w = |z| / 2 + arg(z) / (4 pi q)
/// `phase` is the unwrapped argument of z (the caller tracks it, since the
/// principal value loses whole turns).
double invert_magnetic_entry(double modulus, double phase, double q);

struct CounterexampleOptions {
  std::size_t nodes = 5;
  double q = 0.1;
  std::size_t hub = 0;
  /// Phase applied to the hub's eigenvector row; defaults to 4 pi q.
  std::optional<double> theta;
  /// Hub edge to drop (the shortest-path variant); none for the walk-profile
  /// construction.
  std::optional<std::size_t> removed_target;
};

/// Two weighted graphs whose adjacency-mode magnetic PEs agree on a node pair
/// (u, v) while their walk profiles do not.
struct Counterexample {
  std::size_t hub = 0;
  std::size_t u = 0;
  std::size_t v = 0;
  double q = 0.0;
  double theta = 0.0;

  DirectedGraph original;  // hub -> every other node
  DirectedGraph modified;  // read back from the phase-shifted spectrum
  EigenSystem spectrum;    // of A_q for the original graph
  CMatrix modified_vectors;  // hub row multiplied by e^{i theta}
  CMatrix modified_magnetic;  // V' diag(lambda) V'^H

  /// max over (lambda, z_u, z_v) of |original - modified|.
  double pe_discrepancy = 0.0;
  /// max |V' diag(lambda) V'^H - A_q(modified graph)|: the read-back graph
  /// really has the shifted matrix as its magnetic adjacency.
  double reconstruction_error = 0.0;
  /// max |A_q(modified) V' - V' diag(lambda)|.
  double modified_residual = 0.0;

  double phi = 0.0;        // Phi_{u,v}(2,2) on the original graph
  double phi_prime = 0.0;  // Phi'_{u,v}(2,2) on the modified graph
  double delta = 0.0;      // phi - phi_prime
};

/// Hub construction with the hub row of the eigenvectors phase-shifted.
/// Throws ParameterError for n < 3, q outside [0.05, 0.45], or a bad hub.
Counterexample theorem1_counterexample(const CounterexampleOptions& options);

inline Counterexample theorem1_counterexample(std::size_t n, double q, std::size_t hub = 0) {
  return theorem1_counterexample(CounterexampleOptions{n, q, hub, std::nullopt, std::nullopt});
}

struct SpdCounterexample {
  Counterexample construction;
  std::size_t removed_target = 0;
  std::size_t search_length = 0;
  std::optional<std::size_t> spd_original;
  std::optional<std::size_t> spd_modified;
  double pe_discrepancy = 0.0;

  bool differs() const { return spd_original != spd_modified; }
};

/// Same construction with one hub edge removed; compares the shortest path
/// distance between u and v in both graphs. Requires n >= 4.
SpdCounterexample spd_counterexample(std::size_t n, double q, std::optional<double> theta = {});

}  // namespace maglap
