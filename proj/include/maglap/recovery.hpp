#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "maglap/digraph.hpp"
#include "maglap/matrix.hpp"
#include "maglap/qgrid.hpp"
#include "maglap/spectral.hpp"

namespace maglap {

/// How [M^l]_{u,v} is obtained: from eigenpairs, or by dense multiplication.
enum class PowerRoute { spectral, matpow };

std::string_view to_string(PowerRoute route);

/// Linear system F Phi = Y relating walk profiles of a node pair to matrix
/// powers of the magnetic adjacency across a q-grid:
///   F(j, m) = exp(i 4 pi q_j m),          m = 0..L
///   Y(j, l) = [A_{q_j}^l]_{u,v} exp(i 2 pi q_j l),  column l-1 holds length l
/// Augmented rows use q' = 1/2 - q with F and Y conjugated; rows whose phase
/// exp(i 4 pi q') is already present (q = 0, q = 1/4) are not duplicated.
struct FourierSystem {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t max_length = 0;
  bool normalized = false;
  bool augmented = true;
  std::vector<double> row_potentials;
  std::vector<bool> conjugate_rows;
  CMatrix f;
  CMatrix y;

  std::size_t rows() const { return f.rows(); }
};

/// Row layout of a Fourier system: grid rows first, then mirrored rows.
struct FourierRows {
  std::vector<double> potentials;
  std::vector<std::size_t> grid_index;  // grid entry each row derives from
  std::vector<bool> conjugate;
};

FourierRows fourier_rows(const QGrid& grid, bool augment);
CMatrix fourier_matrix(const std::vector<double>& potentials, std::size_t max_length);

/// Precomputes per-q spectra (or matrix powers) once so systems for many node
/// pairs share the work.
class FourierSystemBuilder {
 public:
  /// Throws PreconditionError if `g` has an antiparallel pair, ParameterError
  /// for L < 1 or an invalid grid.
  FourierSystemBuilder(const DirectedGraph& g, QGrid grid, std::size_t max_length,
                       PowerRoute route = PowerRoute::spectral, bool normalized = false,
                       bool augment = true);

  FourierSystem system(std::size_t u, std::size_t v) const;

  const QGrid& grid() const { return grid_; }
  const CMatrix& fourier() const { return f_; }
  std::size_t max_length() const { return max_length_; }
  /// Eigen-systems used by the spectral route (empty for matpow).
  const std::vector<EigenSystem>& spectra() const { return spectra_; }

 private:
  cplx power_entry(std::size_t j, std::size_t u, std::size_t v, std::size_t l) const;

  std::size_t nodes_;
  QGrid grid_;
  std::size_t max_length_;
  PowerRoute route_;
  bool normalized_;
  bool augment_;
  std::vector<double> degree_;
  std::vector<EigenSystem> spectra_;
  std::vector<std::vector<CMatrix>> powers_;  // [q][l]
  FourierRows rows_;
  CMatrix f_;
};

FourierSystem build_system(const DirectedGraph& g, const QGrid& grid, std::size_t u,
                           std::size_t v, std::size_t max_length,
                           PowerRoute route = PowerRoute::spectral, bool normalized = false);

/// SVD-based least-squares solver for a Fourier matrix.
class FourierSolver {
 public:
  explicit FourierSolver(const CMatrix& f);

  std::size_t rank() const { return rank_; }
  std::size_t required_rank() const { return f_.cols(); }
  bool full_rank() const { return rank_ == f_.cols(); }
  /// sigma_max / sigma_min; infinity when rank deficient.
  double condition_number() const { return condition_; }
  const std::vector<double>& singular_values() const { return svd_sigma_; }

  /// Least-squares solution; throws IllPosedError when rank deficient.
  CMatrix solve(const CMatrix& y) const;

 private:
  CMatrix f_;
  CMatrix u_;
  CMatrix v_;
  std::vector<double> svd_sigma_;
  std::size_t rank_ = 0;
  double condition_ = 0.0;
};

inline constexpr double kRecoveryResidualWarning = 1e-4;

struct Recovery {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t max_length = 0;
  /// Triangular (l, k), l = 0..L, k = 0..l.
  std::vector<double> values;
  double residual = 0.0;          // max |F Phi - Y|
  double imaginary_residue = 0.0;  // max |Im Phi| before taking the real part
  double structural_zero_residue = 0.0;  // max |Phi(l, k)| over k > l
  double condition_number = 0.0;
  std::size_t rank = 0;
  std::vector<std::string> warnings;

  double at(std::size_t l, std::size_t k) const {
    return k > l ? 0.0 : values[l * (l + 1) / 2 + k];
  }
};

/// Solves the system for Phi_{u,v}(l, k), l <= L. Throws IllPosedError when
/// F has rank below L+1.
Recovery recover_walk_profile(const FourierSystem& system);
Recovery recover_walk_profile(const FourierSystem& system, const FourierSolver& solver);

}  // namespace maglap
