#include "maglap/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maglap::jacobi {

namespace {

// Unitary J with J^H [[a, b], [conj(b), d]] J diagonal (a, d real).
struct Rotation {
  cplx pp, pq, qp, qq;
};

Rotation hermitian_rotation(double a, double d, cplx b) {
  const double mag = std::abs(b);
  const cplx phase = b / mag;  // e^{i phi}
  const double theta = (d - a) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx conj_phase = std::conj(phase);
  return {c, s, -s * conj_phase, c * conj_phase};
}

// m <- m J on columns p, q.
void rotate_columns(CMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mp = m(k, p), mq = m(k, q);
    m(k, p) = mp * r.pp + mq * r.qp;
    m(k, q) = mp * r.pq + mq * r.qq;
  }
}

// m <- J^H m on rows p, q.
void rotate_rows(CMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mp = m(p, k), mq = m(q, k);
    m(p, k) = std::conj(r.pp) * mp + std::conj(r.qp) * mq;
    m(q, k) = std::conj(r.pq) * mp + std::conj(r.qq) * mq;
  }
}

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& input, int max_sweeps) {
  const std::size_t n = input.rows();
  CMatrix a(n, n);
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
      frob += std::norm(a(i, j));
    }
  }
  frob = std::sqrt(frob);
  CMatrix v = CMatrix::identity(n);
  HermitianEigen out;

  const double target =
      std::max(1e-15, 4.0 * static_cast<double>(n) * 2.220446049250313e-16) * std::max(frob, 1e-300);
  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    if (off_diagonal_norm(a) <= target) {
      out.converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        if (std::abs(b) <= 1e-300) continue;
        const Rotation r = hermitian_rotation(a(p, p).real(), a(q, q).real(), b);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
  }
  if (!out.converged) out.converged = off_diagonal_norm(a) <= target;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd one_sided_svd(const CMatrix& input, int max_sweeps) {
  const std::size_t m = input.rows(), n = input.cols();
  CMatrix g = input;
  CMatrix v = CMatrix::identity(n);
  Svd out;
  double total = 0.0;
  for (const cplx& x : g.data()) total += std::norm(x);
  // Columns this small are numerically zero; rotating them only churns noise.
  const double negligible = 1e-30 * total;

  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(g(k, p));
          beta += std::norm(g(k, q));
          gamma += std::conj(g(k, p)) * g(k, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = hermitian_rotation(alpha, beta, gamma);
        rotate_columns(g, p, q, r);
        rotate_columns(v, p, q, r);
      }
    }
    if (!rotated) {
      out.converged = true;
      break;
    }
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(g(k, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  out.singular_values.resize(n);
  out.u = CMatrix(m, n);
  out.v = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t j = order[c];
    out.singular_values[c] = sigma[j];
    for (std::size_t k = 0; k < n; ++k) out.v(k, c) = v(k, j);
    if (sigma[j] > 0.0)
      for (std::size_t k = 0; k < m; ++k) out.u(k, c) = g(k, j) / sigma[j];
  }
  return out;
}

}  // namespace maglap::jacobi
