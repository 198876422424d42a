#include "maglap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"
#include "maglap/jacobi.hpp"

namespace maglap {

void certify(EigenSystem& e, const CMatrix& m) {
  const std::size_t n = e.size();
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      cplx mv = 0.0;
      for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * e.vectors(j, k);
      residual = std::max(residual, std::abs(mv - e.eigenvalues[k] * e.vectors(i, k)));
    }
  }
  double unitarity = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(e.vectors(i, a)) * e.vectors(i, b);
      unitarity = std::max(unitarity, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  e.residual = residual;
  e.unitarity_error = unitarity;
}

EigenSystem eig_hermitian(const CMatrix& m, double q, MatrixMode mode) {
  if (m.rows() != m.cols()) throw ParameterError("eig_hermitian: matrix is not square");
  jacobi::HermitianEigen raw = jacobi::hermitian_eigen(m);
  EigenSystem e{std::move(raw.values), std::move(raw.vectors), 0.0, 0.0, q, mode};
  certify(e, m);
  if (e.residual > kEigenTolerance || e.unitarity_error > kEigenTolerance)
    throw ConvergenceError("Hermitian Jacobi did not certify after " + std::to_string(raw.sweeps) +
                           " sweeps: residual " + format_double(e.residual) + ", unitarity " +
                           format_double(e.unitarity_error));
  return e;
}

EigenSystem eig_hermitian(const MagneticMatrix& m) { return eig_hermitian(m.data, m.q, m.mode); }

namespace {

constexpr double kDegenerateGap = 1e-10;
constexpr double kTieTolerance = 1e-10;
constexpr double kLexTolerance = 1e-12;

std::size_t pivot_index(const CMatrix& v, std::size_t col) {
  double best = 0.0;
  for (std::size_t i = 0; i < v.rows(); ++i) best = std::max(best, std::abs(v(i, col)));
  for (std::size_t i = 0; i < v.rows(); ++i)
    if (std::abs(v(i, col)) >= best - kTieTolerance) return i;
  return 0;
}

bool lex_less(const CMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const cplx x = v(i, a), y = v(i, b);
    if (std::abs(x.real() - y.real()) > kLexTolerance) return x.real() < y.real();
    if (std::abs(x.imag() - y.imag()) > kLexTolerance) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

EigenSystem gauge_fix(EigenSystem e) {
  const std::size_t n = e.vectors.rows();
  const std::size_t cols = e.vectors.cols();
  for (std::size_t k = 0; k < cols; ++k) {
    const std::size_t p = pivot_index(e.vectors, k);
    const cplx pivot = e.vectors(p, k);
    if (std::abs(pivot) == 0.0) continue;
    const cplx rot = std::conj(pivot) / std::abs(pivot);
    for (std::size_t i = 0; i < n; ++i) e.vectors(i, k) *= rot;
    e.vectors(p, k) = std::abs(e.vectors(p, k));
  }

  std::size_t start = 0;
  while (start < cols) {
    std::size_t end = start + 1;
    while (end < cols && e.eigenvalues[end] - e.eigenvalues[end - 1] <= kDegenerateGap) ++end;
    if (end - start > 1) {
      std::vector<std::size_t> order(end - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return lex_less(e.vectors, a, b); });
      CMatrix block(n, end - start);
      std::vector<double> vals(end - start);
      for (std::size_t c = 0; c < order.size(); ++c) {
        vals[c] = e.eigenvalues[order[c]];
        for (std::size_t i = 0; i < n; ++i) block(i, c) = e.vectors(i, order[c]);
      }
      for (std::size_t c = 0; c < order.size(); ++c) {
        e.eigenvalues[start + c] = vals[c];
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, start + c) = block(i, c);
      }
    }
    start = end;
  }
  return e;
}

cplx spectral_power_entry(const EigenSystem& e, std::size_t u, std::size_t v, int ell) {
  if (ell < 0) throw ParameterError("spectral_power_entry: negative power");
  if (u >= e.vectors.rows() || v >= e.vectors.rows())
    throw ParameterError("spectral_power_entry: node out of range");
  cplx sum = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k)
    sum += std::pow(e.eigenvalues[k], ell) * e.vectors(u, k) * std::conj(e.vectors(v, k));
  return sum;
}

CMatrix reconstruct(const EigenSystem& e) {
  const std::size_t n = e.vectors.rows();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < e.size(); ++k)
        s += e.eigenvalues[k] * e.vectors(i, k) * std::conj(e.vectors(j, k));
      m(i, j) = s;
    }
  return m;
}

std::size_t default_pe_dimension(std::size_t n) { return n > 32 ? 32 : n; }

PEMatrix multi_q_pe(const DirectedGraph& g, const QGrid& grid, std::optional<std::size_t> k,
                    MatrixMode mode) {
  const std::size_t n = g.node_count();
  const std::size_t kk = k.value_or(default_pe_dimension(n));
  if (kk == 0) throw ParameterError("K must be positive");
  if (kk > n)
    throw ParameterError("K = " + std::to_string(kk) + " exceeds node count " + std::to_string(n));
  if (grid.qs.empty()) throw ParameterError("q-grid must not be empty");

  PEMatrix pe{n, kk, grid, mode, {}, CMatrix(n, kk * grid.size())};
  for (std::size_t b = 0; b < grid.size(); ++b) {
    const EigenSystem e = gauge_fix(eig_hermitian(magnetic_matrix(g, grid.qs[b], mode)));
    pe.eigenvalue_blocks.emplace_back(e.eigenvalues.begin(),
                                      e.eigenvalues.begin() + static_cast<std::ptrdiff_t>(kk));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t c = 0; c < kk; ++c) pe.values(u, b * kk + c) = e.vectors(u, c);
  }
  return pe;
}

namespace {

// Sign convention for real singular vectors: largest-magnitude entry positive.
double sign_of_pivot(const RMatrix& m, std::size_t col) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, col)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (std::abs(m(i, col)) >= best - kTieTolerance) return m(i, col) < 0.0 ? -1.0 : 1.0;
  return 1.0;
}

}  // namespace

SvdPE svd_pe(const DirectedGraph& g, std::optional<std::size_t> k) {
  const std::size_t n = g.node_count();
  const std::size_t kk = k.value_or(default_pe_dimension(n));
  if (kk == 0) throw ParameterError("K must be positive");
  if (kk > n)
    throw ParameterError("K = " + std::to_string(kk) + " exceeds node count " + std::to_string(n));

  const RMatrix a = g.weight_matrix();
  const RMatrix at = transpose(a);
  const EigenSystem left = eig_hermitian(to_complex(multiply(a, at)));
  const EigenSystem right = eig_hermitian(to_complex(multiply(at, a)));

  std::vector<double> sigma(n);
  RMatrix u(n, n), w(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = n - 1 - c;  // descending
    sigma[c] = std::sqrt(std::max(left.eigenvalues[src], 0.0));
    for (std::size_t i = 0; i < n; ++i) u(i, c) = left.vectors(i, src).real();
  }
  const double smax = n > 0 ? sigma[0] : 0.0;
  std::size_t rank = 0;
  while (rank < n && sigma[rank] > std::max(1e-8 * smax, 1e-12)) ++rank;

  // Right vectors follow the left ones through W = A^T U / sigma; the null
  // space comes from the smallest eigenvectors of A^T A.
  for (std::size_t c = 0; c < rank; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += at(i, j) * u(j, c);
      w(i, c) = s / sigma[c];
    }
  for (std::size_t c = rank; c < n; ++c) {
    sigma[c] = 0.0;
    const std::size_t src = c - rank;
    for (std::size_t i = 0; i < n; ++i) w(i, c) = right.vectors(i, src).real();
  }

  for (std::size_t c = 0; c < n; ++c) {
    const double s = sign_of_pivot(u, c);
    for (std::size_t i = 0; i < n; ++i) {
      u(i, c) *= s;
      w(i, c) *= s;
    }
  }

  SvdPE out{std::vector<double>(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(kk)),
            RMatrix(n, kk), RMatrix(n, kk), RMatrix(n, 2 * kk)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < kk; ++c) {
      out.u(i, c) = u(i, c);
      out.w(i, c) = w(i, c);
      out.features(i, c) = u(i, c);
      out.features(i, kk + c) = w(i, c);
    }
  return out;
}

}  // namespace maglap
