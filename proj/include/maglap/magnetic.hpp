#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maglap/digraph.hpp"
#include "maglap/matrix.hpp"

namespace maglap {

enum class MatrixMode { adjacency, laplacian, rw_adjacency };

std::string_view to_string(MatrixMode mode);
MatrixMode parse_matrix_mode(std::string_view name);  // "adj" | "lap" | "rw" or full names

/// Dense Hermitian matrix built from a directed graph at potential q.
struct MagneticMatrix {
  double q = 0.0;
  MatrixMode mode = MatrixMode::adjacency;
  CMatrix data;
  /// Carried over from the source graph; recovery refuses such matrices.
  bool has_antiparallel = false;

  std::size_t size() const { return data.rows(); }
};

/// Weight-summed in-degree plus out-degree per node.
std::vector<double> total_degree(const DirectedGraph& g);

/// [A_q]_{u,v} = (A_uv + A_vu) * exp(i 2 pi q (A_uv - A_vu)).
MagneticMatrix magnetic_adjacency(const DirectedGraph& g, double q);

/// L_q = I - D^{-1/2} A_q D^{-1/2}; zero-degree nodes get D^{-1/2} = 0, so
/// their row and column reduce to the identity.
MagneticMatrix magnetic_laplacian(const DirectedGraph& g, double q);

struct RwMagnetic {
  MagneticMatrix matrix;  // S_q = D^{-1/2} A_q D^{-1/2}
  std::vector<double> degree;
};

/// Symmetric form of the random-walk magnetic matrix D^{-1} A_q, which equals
/// D^{-1/2} S_q D^{1/2}. Throws PreconditionError naming a zero-degree node.
RwMagnetic rw_magnetic_adjacency(const DirectedGraph& g, double q);

MagneticMatrix magnetic_matrix(const DirectedGraph& g, double q, MatrixMode mode);

}  // namespace maglap
