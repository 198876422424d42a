#include "maglap/magnetic.hpp"

#include <cmath>

#include "maglap/errors.hpp"

namespace maglap {

std::string_view to_string(MatrixMode mode) {
  switch (mode) {
    case MatrixMode::adjacency: return "adjacency";
    case MatrixMode::laplacian: return "laplacian";
    case MatrixMode::rw_adjacency: return "rw_adjacency";
  }
  return "unknown";
}

MatrixMode parse_matrix_mode(std::string_view name) {
  if (name == "adj" || name == "adjacency") return MatrixMode::adjacency;
  if (name == "lap" || name == "laplacian") return MatrixMode::laplacian;
  if (name == "rw" || name == "rw_adjacency") return MatrixMode::rw_adjacency;
  throw ParameterError("unknown matrix mode '" + std::string(name) + "'");
}

std::vector<double> total_degree(const DirectedGraph& g) {
  std::vector<double> d(g.node_count(), 0.0);
  for (const Edge& e : g.edges()) {
    d[e.source] += e.weight;
    d[e.target] += e.weight;
  }
  return d;
}

MagneticMatrix magnetic_adjacency(const DirectedGraph& g, double q) {
  const std::size_t n = g.node_count();
  const RMatrix w = g.weight_matrix();
  MagneticMatrix m{q, MatrixMode::adjacency, CMatrix(n, n), g.has_antiparallel()};
  for (const Edge& e : g.edges()) {
    const std::size_t u = e.source, v = e.target;
    const double sum = w(u, v) + w(v, u);
    const double diff = w(u, v) - w(v, u);
    const cplx entry = sum * std::polar(1.0, kTwoPi * q * diff);
    m.data(u, v) = entry;
    m.data(v, u) = std::conj(entry);
  }
  return m;
}

namespace {

CMatrix scale_symmetric(const CMatrix& a, const std::vector<double>& s) {
  CMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s[i] * a(i, j) * s[j];
  return out;
}

std::vector<double> inv_sqrt_or_zero(const std::vector<double>& d) {
  std::vector<double> s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  return s;
}

}  // namespace

MagneticMatrix magnetic_laplacian(const DirectedGraph& g, double q) {
  MagneticMatrix a = magnetic_adjacency(g, q);
  CMatrix l = scale_symmetric(a.data, inv_sqrt_or_zero(total_degree(g)));
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) = (i == j ? 1.0 : 0.0) - l(i, j);
  return {q, MatrixMode::laplacian, std::move(l), a.has_antiparallel};
}

RwMagnetic rw_magnetic_adjacency(const DirectedGraph& g, double q) {
  std::vector<double> d = total_degree(g);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(d[i] > 0.0))
      throw PreconditionError("node " + std::to_string(i) +
                              " has zero total degree; random-walk normalization undefined");
  MagneticMatrix a = magnetic_adjacency(g, q);
  CMatrix s = scale_symmetric(a.data, inv_sqrt_or_zero(d));
  return {{q, MatrixMode::rw_adjacency, std::move(s), a.has_antiparallel}, std::move(d)};
}

MagneticMatrix magnetic_matrix(const DirectedGraph& g, double q, MatrixMode mode) {
  switch (mode) {
    case MatrixMode::adjacency: return magnetic_adjacency(g, q);
    case MatrixMode::laplacian: return magnetic_laplacian(g, q);
    case MatrixMode::rw_adjacency: return rw_magnetic_adjacency(g, q).matrix;
  }
  throw ParameterError("unknown matrix mode");
}

}  // namespace maglap
