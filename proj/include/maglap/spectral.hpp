#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maglap/digraph.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/matrix.hpp"
#include "maglap/qgrid.hpp"

namespace maglap {

inline constexpr double kEigenTolerance = 1e-8;

/// Eigen-decomposition M = V diag(lambda) V^H with certificates.
struct EigenSystem {
  std::vector<double> eigenvalues;  // nondecreasing
  CMatrix vectors;                  // columns are eigenvectors
  double residual = 0.0;            // max |M V - V diag(lambda)|
  double unitarity_error = 0.0;     // max |V^H V - I|
  double q = 0.0;
  MatrixMode mode = MatrixMode::adjacency;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Throws ConvergenceError when either certificate exceeds kEigenTolerance.
EigenSystem eig_hermitian(const MagneticMatrix& m);
EigenSystem eig_hermitian(const CMatrix& m, double q = 0.0,
                          MatrixMode mode = MatrixMode::adjacency);

/// Recomputes the residual and unitarity certificates of `e` against `m`.
void certify(EigenSystem& e, const CMatrix& m);

/// Rotates each eigenvector so its largest-modulus entry (lowest index on
/// ties) is real and positive, then orders vectors inside groups of equal
/// eigenvalues (within 1e-10) lexicographically. Idempotent.
EigenSystem gauge_fix(EigenSystem e);

/// sum_k lambda_k^ell V_{u,k} conj(V_{v,k}), i.e. entry (u,v) of M^ell.
cplx spectral_power_entry(const EigenSystem& e, std::size_t u, std::size_t v, int ell);

/// Reassembles V diag(lambda) V^H.
CMatrix reconstruct(const EigenSystem& e);

/// Multi-potential positional encoding: for each q, the gauge-fixed
/// eigenvectors of the K smallest eigenvalues, concatenated block by block.
struct PEMatrix {
  std::size_t nodes = 0;
  std::size_t k = 0;
  QGrid grid;
  MatrixMode mode = MatrixMode::laplacian;
  std::vector<std::vector<double>> eigenvalue_blocks;
  CMatrix values;  // nodes x (k * grid.size())

  cplx at(std::size_t node, std::size_t block, std::size_t col) const {
    return values(node, block * k + col);
  }
};

/// 32 when n > 32, otherwise n.
std::size_t default_pe_dimension(std::size_t n);

PEMatrix multi_q_pe(const DirectedGraph& g, const QGrid& grid, std::optional<std::size_t> k,
                    MatrixMode mode = MatrixMode::laplacian);

/// SVD of the real weight matrix A = U diag(sigma) W^T, sigma descending.
struct SvdPE {
  std::vector<double> singular_values;
  RMatrix u;         // n x K
  RMatrix w;         // n x K
  RMatrix features;  // n x 2K: (U row, W row)
};

SvdPE svd_pe(const DirectedGraph& g, std::optional<std::size_t> k);

}  // namespace maglap
