#include "maglap/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"
#include "maglap/jacobi.hpp"
#include "maglap/magnetic.hpp"

namespace maglap {

std::string_view to_string(PowerRoute route) {
  return route == PowerRoute::spectral ? "spectral" : "matpow";
}

namespace {

constexpr double kPhaseCollision = 1e-12;
constexpr double kRankTolerance = 1e-10;

cplx row_phase(double q) { return std::polar(1.0, 2.0 * kTwoPi * q); }

}  // namespace

FourierRows fourier_rows(const QGrid& grid, bool augment) {
  FourierRows rows;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    rows.potentials.push_back(grid.qs[j]);
    rows.grid_index.push_back(j);
    rows.conjugate.push_back(false);
  }
  if (!augment) return rows;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double mirrored = 0.5 - grid.qs[j];
    const cplx phase = row_phase(mirrored);
    bool present = std::any_of(rows.potentials.begin(), rows.potentials.end(), [&](double p) {
      return std::abs(row_phase(p) - phase) <= kPhaseCollision;
    });
    if (present) continue;
    rows.potentials.push_back(mirrored);
    rows.grid_index.push_back(j);
    rows.conjugate.push_back(true);
  }
  return rows;
}

CMatrix fourier_matrix(const std::vector<double>& potentials, std::size_t max_length) {
  CMatrix f(potentials.size(), max_length + 1);
  for (std::size_t j = 0; j < potentials.size(); ++j)
    for (std::size_t m = 0; m <= max_length; ++m)
      f(j, m) = std::polar(1.0, 2.0 * kTwoPi * potentials[j] * static_cast<double>(m));
  return f;
}

FourierSystemBuilder::FourierSystemBuilder(const DirectedGraph& g, QGrid grid,
                                           std::size_t max_length, PowerRoute route,
                                           bool normalized, bool augment)
    : nodes_(g.node_count()),
      grid_(std::move(grid)),
      max_length_(max_length),
      route_(route),
      normalized_(normalized),
      augment_(augment) {
  if (max_length_ < 1) throw ParameterError("recovery requires L >= 1");
  if (const auto& pair = g.antiparallel_pair())
    throw PreconditionError("graph has antiparallel edges " + std::to_string(pair->first) + "->" +
                            std::to_string(pair->second) + " and " + std::to_string(pair->second) +
                            "->" + std::to_string(pair->first) +
                            "; walk-profile recovery requires at most one direction per pair");
  validate_recovery_grid(grid_);

  if (normalized_) {
    degree_ = total_degree(g);
    for (std::size_t i = 0; i < degree_.size(); ++i)
      if (!(degree_[i] > 0.0))
        throw PreconditionError("normalized recovery: node " + std::to_string(i) +
                                " has zero total degree");
  }

  for (double q : grid_.qs) {
    if (route_ == PowerRoute::spectral) {
      const MagneticMatrix m =
          normalized_ ? rw_magnetic_adjacency(g, q).matrix : magnetic_adjacency(g, q);
      spectra_.push_back(eig_hermitian(m));
    } else {
      CMatrix step = magnetic_adjacency(g, q).data;
      if (normalized_)
        for (std::size_t i = 0; i < nodes_; ++i)
          for (std::size_t j = 0; j < nodes_; ++j) step(i, j) /= degree_[i];
      std::vector<CMatrix> powers{CMatrix::identity(nodes_)};
      for (std::size_t l = 1; l <= max_length_; ++l) powers.push_back(multiply(powers.back(), step));
      powers_.push_back(std::move(powers));
    }
  }

  rows_ = fourier_rows(grid_, augment_);
  f_ = fourier_matrix(rows_.potentials, max_length_);
}

cplx FourierSystemBuilder::power_entry(std::size_t j, std::size_t u, std::size_t v,
                                       std::size_t l) const {
  if (route_ == PowerRoute::matpow) return powers_[j][l](u, v);
  cplx entry = spectral_power_entry(spectra_[j], u, v, static_cast<int>(l));
  // (D^{-1} A_q)^l = D^{-1/2} S_q^l D^{1/2}
  if (normalized_) entry *= std::sqrt(degree_[v] / degree_[u]);
  return entry;
}

FourierSystem FourierSystemBuilder::system(std::size_t u, std::size_t v) const {
  if (u >= nodes_ || v >= nodes_) throw ParameterError("node pair out of range");
  FourierSystem sys;
  sys.u = u;
  sys.v = v;
  sys.max_length = max_length_;
  sys.normalized = normalized_;
  sys.augmented = augment_;
  sys.row_potentials = rows_.potentials;
  sys.conjugate_rows = rows_.conjugate;
  sys.f = f_;
  const std::size_t q_count = grid_.size();
  CMatrix base(q_count, max_length_);
  for (std::size_t j = 0; j < q_count; ++j) {
    const double q = grid_.qs[j];
    for (std::size_t l = 1; l <= max_length_; ++l)
      base(j, l - 1) = power_entry(j, u, v, l) * std::polar(1.0, kTwoPi * q * static_cast<double>(l));
  }
  sys.y = CMatrix(rows_.potentials.size(), max_length_);
  for (std::size_t r = 0; r < rows_.potentials.size(); ++r) {
    const std::size_t from = rows_.grid_index[r];
    for (std::size_t l = 0; l < max_length_; ++l)
      sys.y(r, l) = rows_.conjugate[r] ? std::conj(base(from, l)) : base(from, l);
  }
  return sys;
}

FourierSystem build_system(const DirectedGraph& g, const QGrid& grid, std::size_t u,
                           std::size_t v, std::size_t max_length, PowerRoute route,
                           bool normalized) {
  return FourierSystemBuilder(g, grid, max_length, route, normalized).system(u, v);
}

FourierSolver::FourierSolver(const CMatrix& f) : f_(f) {
  jacobi::Svd svd = jacobi::one_sided_svd(f);
  u_ = std::move(svd.u);
  v_ = std::move(svd.v);
  svd_sigma_ = std::move(svd.singular_values);
  const double smax = svd_sigma_.empty() ? 0.0 : svd_sigma_.front();
  rank_ = static_cast<std::size_t>(std::count_if(
      svd_sigma_.begin(), svd_sigma_.end(), [&](double s) { return s > kRankTolerance * smax; }));
  condition_ = full_rank() && smax > 0.0 ? smax / svd_sigma_.back()
                                         : std::numeric_limits<double>::infinity();
}

CMatrix FourierSolver::solve(const CMatrix& y) const {
  if (!full_rank())
    throw IllPosedError(rank_, required_rank(),
                        "Fourier system is rank deficient: rank " + std::to_string(rank_) +
                            " < " + std::to_string(required_rank()) +
                            " unknowns; walk profile is not determined by these potentials");
  const std::size_t n = f_.cols();
  // x = V diag(1/sigma) U^H y
  CMatrix x(n, y.cols());
  for (std::size_t c = 0; c < y.cols(); ++c) {
    std::vector<cplx> t(n);
    for (std::size_t k = 0; k < n; ++k) {
      cplx s = 0.0;
      for (std::size_t r = 0; r < f_.rows(); ++r) s += std::conj(u_(r, k)) * y(r, c);
      t[k] = s / svd_sigma_[k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v_(i, k) * t[k];
      x(i, c) = s;
    }
  }
  return x;
}

Recovery recover_walk_profile(const FourierSystem& system) {
  return recover_walk_profile(system, FourierSolver(system.f));
}

Recovery recover_walk_profile(const FourierSystem& system, const FourierSolver& solver) {
  const std::size_t L = system.max_length;
  const CMatrix x = solver.solve(system.y);  // (L+1) x L, column l-1 holds length l

  Recovery rec;
  rec.u = system.u;
  rec.v = system.v;
  rec.max_length = L;
  rec.rank = solver.rank();
  rec.condition_number = solver.condition_number();
  rec.values.assign((L + 1) * (L + 2) / 2, 0.0);
  rec.values[0] = system.u == system.v ? 1.0 : 0.0;

  const CMatrix fitted = multiply(system.f, x);
  rec.residual = max_abs_diff(fitted, system.y);
  for (std::size_t l = 1; l <= L; ++l) {
    for (std::size_t k = 0; k <= L; ++k) {
      const cplx value = x(k, l - 1);
      rec.imaginary_residue = std::max(rec.imaginary_residue, std::abs(value.imag()));
      if (k <= l)
        rec.values[l * (l + 1) / 2 + k] = value.real();
      else
        rec.structural_zero_residue = std::max(rec.structural_zero_residue, std::abs(value));
    }
  }
  if (rec.residual > kRecoveryResidualWarning)
    rec.warnings.push_back("least-squares residual " + format_double(rec.residual) +
                           " exceeds " + format_double(kRecoveryResidualWarning) +
                           "; inputs are inconsistent with a real walk profile");
  return rec;
}

}  // namespace maglap
