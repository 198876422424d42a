#pragma once

#include <vector>

#include "maglap/matrix.hpp"

namespace maglap::jacobi {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic complex Jacobi. Only the Hermitian part of `a` is used.
HermitianEigen hermitian_eigen(const CMatrix& a, int max_sweeps = 100);

struct Svd {
  std::vector<double> singular_values;  // descending, length = cols
  CMatrix u;                            // rows x cols, zero columns where sigma = 0
  CMatrix v;                            // cols x cols, unitary
  int sweeps = 0;
  bool converged = false;
};

/// One-sided (Hestenes) Jacobi SVD; works for wide and tall matrices.
Svd one_sided_svd(const CMatrix& a, int max_sweeps = 100);

}  // namespace maglap::jacobi
