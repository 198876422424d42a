#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace maglap {

enum class GridPolicy { evenly_spaced, random, user };

std::string_view to_string(GridPolicy policy);

/// Ordered list of potentials. `target_length` is the walk length the grid was
/// built for (0 when unknown).
struct QGrid {
  std::vector<double> qs;
  GridPolicy policy = GridPolicy::user;
  std::size_t target_length = 0;

  std::size_t size() const { return qs.size(); }
};

/// ceil(L/2) + 1, the number of potentials needed to recover profiles up to L.
std::size_t required_potentials(std::size_t max_length);

/// Evenly spaced: q_j = j / (2(L+1)), j = 0..ceil(L/2). When that lands on 1/4
/// (odd L) the last value is pulled in by 1/(8(L+1)).
/// Random: uniform over sorted grids in [0, 1/4) with gaps >= 0.2/L.
QGrid make_qgrid(std::size_t max_length, GridPolicy policy, std::uint64_t seed = 0);

QGrid user_qgrid(std::vector<double> qs, std::size_t target_length = 0);

/// Throws ParameterError unless every q is in [0, 1/4) and the values are
/// pairwise distinct modulo 1/2.
void validate_recovery_grid(const QGrid& grid);

}  // namespace maglap
