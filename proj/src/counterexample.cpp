#include "maglap/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/walk_profile.hpp"

namespace maglap {

namespace {

// Entries below this modulus are read back as "no edge in either direction".
constexpr double kZeroEntry = 1e-9;

double row_difference(const CMatrix& a, const CMatrix& b, std::size_t row) {
  double m = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(row, c) - b(row, c)));
  return m;
}

}  // namespace

double invert_magnetic_entry(double modulus, double phase, double q) {
  return 0.5 * modulus + 0.5 * phase / (kTwoPi * q);
}

Counterexample theorem1_counterexample(const CounterexampleOptions& opt) {
  const std::size_t n = opt.nodes;
  if (n < 3) throw ParameterError("counterexample needs n >= 3");
  if (!(opt.q >= kCounterexampleMinQ && opt.q <= kCounterexampleMaxQ))
    throw ParameterError("q = " + format_double(opt.q) + " outside the safe range [" +
                         format_double(kCounterexampleMinQ) + ", " +
                         format_double(kCounterexampleMaxQ) + "] for phase inversion");
  if (opt.hub >= n) throw ParameterError("hub out of range");
  if (opt.removed_target && (*opt.removed_target >= n || *opt.removed_target == opt.hub))
    throw ParameterError("removed hub edge target must be a non-hub node");

  Counterexample ce;
  ce.hub = opt.hub;
  ce.q = opt.q;
  ce.theta = opt.theta.value_or(2.0 * kTwoPi * opt.q);

  std::vector<std::size_t> others;
  for (std::size_t w = 0; w < n; ++w)
    if (w != opt.hub && (!opt.removed_target || w != *opt.removed_target)) others.push_back(w);
  if (others.size() < 2) throw ParameterError("not enough non-hub nodes for the pair (u, v)");
  ce.u = others[0];
  ce.v = others[1];

  std::vector<Edge> edges;
  for (std::size_t w : others) edges.push_back({opt.hub, w, 1.0});
  ce.original = DirectedGraph(n, std::move(edges));

  const RMatrix a = ce.original.weight_matrix();
  const MagneticMatrix aq = magnetic_adjacency(ce.original, ce.q);
  ce.spectrum = eig_hermitian(aq);

  ce.modified_vectors = ce.spectrum.vectors;
  const cplx shift = std::polar(1.0, ce.theta);
  for (std::size_t k = 0; k < n; ++k) ce.modified_vectors(opt.hub, k) *= shift;

  EigenSystem shifted = ce.spectrum;
  shifted.vectors = ce.modified_vectors;
  ce.modified_magnetic = reconstruct(shifted);

  // Read A' back entry by entry. The phase is unwrapped against the phase the
  // construction predicts: the original 2 pi q (A_wr - A_rw), plus theta on the
  // hub's row and minus theta on its column.
  std::vector<Edge> modified_edges;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t r = 0; r < n; ++r) {
      if (w == r) continue;
      const cplx z = ce.modified_magnetic(w, r);
      if (std::abs(z) <= kZeroEntry) continue;
      double expected = kTwoPi * ce.q * (a(w, r) - a(r, w));
      if (w == opt.hub) expected += ce.theta;
      if (r == opt.hub) expected -= ce.theta;
      const double principal = std::arg(z);
      const double phase = principal + kTwoPi * std::round((expected - principal) / kTwoPi);
      const double weight = invert_magnetic_entry(std::abs(z), phase, ce.q);
      if (std::abs(weight) > kZeroEntry) modified_edges.push_back({w, r, weight});
    }
  }
  ce.modified = DirectedGraph(n, std::move(modified_edges));

  const MagneticMatrix modified_aq = magnetic_adjacency(ce.modified, ce.q);
  ce.reconstruction_error = max_abs_diff(ce.modified_magnetic, modified_aq.data);

  EigenSystem claimed = ce.spectrum;
  claimed.vectors = ce.modified_vectors;
  certify(claimed, modified_aq.data);
  ce.modified_residual = claimed.residual;

  // Eigenvalues of the read-back graph, computed from scratch.
  const EigenSystem independent = eig_hermitian(modified_aq);
  double discrepancy = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    discrepancy =
        std::max(discrepancy, std::abs(independent.eigenvalues[k] - ce.spectrum.eigenvalues[k]));
  discrepancy = std::max(discrepancy, row_difference(ce.spectrum.vectors, ce.modified_vectors, ce.u));
  discrepancy = std::max(discrepancy, row_difference(ce.spectrum.vectors, ce.modified_vectors, ce.v));
  discrepancy = std::max(discrepancy, ce.modified_residual);
  ce.pe_discrepancy = discrepancy;

  ce.phi = walk_profile(ce.original, ce.u, 2).at(2, 2, ce.v);
  ce.phi_prime = walk_profile(ce.modified, ce.u, 2).at(2, 2, ce.v);
  ce.delta = ce.phi - ce.phi_prime;
  return ce;
}

SpdCounterexample spd_counterexample(std::size_t n, double q, std::optional<double> theta) {
  if (n < 4) throw ParameterError("shortest-path counterexample needs n >= 4");
  SpdCounterexample out;
  out.removed_target = n - 1;
  out.construction = theorem1_counterexample(CounterexampleOptions{n, q, 0, theta, n - 1});
  // The modified graph connects u to v only through hub cycles of length 4.
  out.search_length = std::max<std::size_t>(n - 1, 4);
  const Counterexample& ce = out.construction;
  out.spd_original = shortest_path_distance(ce.original, ce.u, ce.v, out.search_length);
  out.spd_modified = shortest_path_distance(ce.modified, ce.u, ce.v, out.search_length);
  out.pe_discrepancy = ce.pe_discrepancy;
  return out;
}

}  // namespace maglap
