#include "maglap/spefunc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"

namespace maglap {

FilterBank FilterBank::heat(const std::vector<double>& times) {
  FilterBank bank;
  for (double t : times)
    bank.append({"heat_t" + format_double(t), [t](double lambda) { return std::exp(-t * lambda); }});
  return bank;
}

FilterBank FilterBank::powers(std::size_t count) {
  FilterBank bank;
  for (std::size_t p = 0; p < count; ++p) {
    const int exponent = static_cast<int>(p);
    bank.append({"power_" + std::to_string(p),
                 [exponent](double lambda) { return std::pow(lambda, exponent); }});
  }
  return bank;
}

FilterBank FilterBank::standard() {
  FilterBank bank = heat({0.5, 1.0, 2.0});
  const FilterBank extra = powers(4);
  for (const SpectralFilter& f : extra.filters()) bank.append(f);
  return bank;
}

FeatureStack spectral_features(const EigenSystem& e, const FilterBank& bank) {
  const std::size_t n = e.vectors.rows();
  const std::size_t r = e.vectors.cols();
  FeatureStack out;
  for (const SpectralFilter& filter : bank.filters()) {
    std::vector<double> weights(r);
    for (std::size_t k = 0; k < r; ++k) weights[k] = filter.apply(e.eigenvalues[k]);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < r; ++k)
          s += weights[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
        m(i, j) = s;
      }
    out.hermitian_residue = std::max(out.hermitian_residue, hermitian_defect(m));
    RMatrix re(n, n), im(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        re(i, j) = m(i, j).real();
        im(i, j) = m(i, j).imag();
      }
    out.real.push_back(std::move(re));
    out.imag.push_back(std::move(im));
  }
  return out;
}

double max_feature_deviation(const FeatureStack& a, const FeatureStack& b) {
  if (a.filters() != b.filters()) throw ParameterError("feature stacks differ in filter count");
  double m = 0.0;
  for (std::size_t f = 0; f < a.filters(); ++f) {
    m = std::max(m, max_abs_diff(a.real[f], b.real[f]));
    m = std::max(m, max_abs_diff(a.imag[f], b.imag[f]));
  }
  return m;
}

RMatrix node_readout(const FeatureStack& features) {
  const std::size_t m = features.filters();
  const std::size_t n = m > 0 ? features.real[0].rows() : 0;
  RMatrix out(n, 2 * m);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t i = 0; i < n; ++i) {
      out(i, f) = features.real[f](i, i);
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += features.imag[f](i, j);
      out(i, m + f) = row;
    }
  return out;
}

StablePE stable_pe(const DirectedGraph& g, const QGrid& grid, const FilterBank& bank,
                   MatrixMode mode, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  const std::size_t n = g.node_count();
  const std::size_t m = bank.size();
  if (m == 0) throw ParameterError("filter bank is empty");
  for (const auto& [u, v] : pairs)
    if (u >= n || v >= n) throw ParameterError("edge-PE pair out of range");

  StablePE pe;
  pe.grid = grid;
  pe.mode = mode;
  for (const SpectralFilter& f : bank.filters()) pe.filter_names.push_back(f.name);
  pe.node_pe = RMatrix(n, 2 * m * grid.size());
  pe.pairs = pairs;
  pe.edge_pe = RMatrix(pairs.size(), 2 * m * grid.size());

  for (std::size_t b = 0; b < grid.size(); ++b) {
    const EigenSystem e = eig_hermitian(magnetic_matrix(g, grid.qs[b], mode));
    const FeatureStack features = spectral_features(e, bank);
    const RMatrix node = node_readout(features);
    const std::size_t offset = b * 2 * m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < 2 * m; ++c) pe.node_pe(i, offset + c) = node(i, c);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t f = 0; f < m; ++f) {
        pe.edge_pe(p, offset + f) = features.real[f](pairs[p].first, pairs[p].second);
        pe.edge_pe(p, offset + m + f) = features.imag[f](pairs[p].first, pairs[p].second);
      }
  }
  return pe;
}

std::vector<std::pair<std::size_t, std::size_t>> eigenvalue_groups(const EigenSystem& e,
                                                                   double tolerance) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  while (start < e.size()) {
    std::size_t end = start + 1;
    while (end < e.size() && e.eigenvalues[end] - e.eigenvalues[end - 1] <= tolerance) ++end;
    groups.emplace_back(start, end);
    start = end;
  }
  return groups;
}

CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = cplx(normal(rng), normal(rng));
  // Modified Gram-Schmidt; normalising each column by a positive real gives
  // the QR factor with positive diagonal R, which is Haar distributed.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(z(i, p)) * z(i, j);
      for (std::size_t i = 0; i < n; ++i) z(i, j) -= dot * z(i, p);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(z(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) z(i, j) /= norm;
  }
  return z;
}

EigenSystem apply_random_gauge(const EigenSystem& e, std::uint64_t seed, bool phases_only) {
  EigenSystem out = e;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const std::size_t n = e.vectors.rows();
  for (const auto& [begin, end] : eigenvalue_groups(e, kDegeneracyTolerance)) {
    const std::size_t size = end - begin;
    CMatrix mix = phases_only ? CMatrix::identity(size) : random_unitary(size, rng());
    for (std::size_t c = 0; c < size; ++c) {
      const cplx phase = std::polar(1.0, angle(rng));
      for (std::size_t r = 0; r < size; ++r) mix(r, c) *= phase;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < size; ++c) {
        cplx s = 0.0;
        for (std::size_t r = 0; r < size; ++r) s += e.vectors(i, begin + r) * mix(r, c);
        out.vectors(i, begin + c) = s;
      }
  }
  return out;
}

double gauge_invariance_check(const MagneticMatrix& m, const FilterBank& bank, std::size_t trials,
                              std::uint64_t seed, bool phases_only) {
  if (trials == 0) throw ParameterError("gauge_invariance_check needs at least one trial");
  const EigenSystem e = eig_hermitian(m);
  const FeatureStack base = spectral_features(e, bank);
  std::mt19937_64 seeds(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const EigenSystem regauged = apply_random_gauge(e, seeds(), phases_only);
    worst = std::max(worst, max_feature_deviation(base, spectral_features(regauged, bank)));
  }
  return worst;
}

std::vector<double> q_continuity_profile(const DirectedGraph& g, const FilterBank& bank,
                                         const std::vector<double>& q_list, MatrixMode mode) {
  for (std::size_t i = 1; i < q_list.size(); ++i)
    if (!(q_list[i] < q_list[i - 1])) throw ParameterError("q_list must be strictly decreasing");
  const FeatureStack reference = spectral_features(eig_hermitian(magnetic_matrix(g, 0.0, mode)), bank);
  std::vector<double> deviations;
  for (double q : q_list)
    deviations.push_back(max_feature_deviation(
        spectral_features(eig_hermitian(magnetic_matrix(g, q, mode)), bank), reference));
  return deviations;
}

}  // namespace maglap
