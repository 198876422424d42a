#include "maglap/qgrid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"

namespace maglap {

std::string_view to_string(GridPolicy policy) {
  switch (policy) {
    case GridPolicy::evenly_spaced: return "evenly_spaced";
    case GridPolicy::random: return "random";
    case GridPolicy::user: return "user";
  }
  return "unknown";
}

std::size_t required_potentials(std::size_t max_length) { return (max_length + 1) / 2 + 1; }

namespace {

QGrid evenly_spaced(std::size_t L) {
  QGrid grid{{}, GridPolicy::evenly_spaced, L};
  const double denom = 2.0 * static_cast<double>(L + 1);
  const std::size_t count = required_potentials(L);
  for (std::size_t j = 0; j < count; ++j) {
    double q = static_cast<double>(j) / denom;
    if (q >= 0.25) q = 0.25 - 1.0 / (8.0 * static_cast<double>(L + 1));
    grid.qs.push_back(q);
  }
  return grid;
}

QGrid random_grid(std::size_t L, std::uint64_t seed) {
  const std::size_t count = required_potentials(L);
  const double separation = 0.2 / static_cast<double>(L);
  const double slack = 0.25 - separation * static_cast<double>(count - 1);
  if (!(slack > 0.0))
    throw ParameterError("random q-grid: cannot place " + std::to_string(count) +
                         " values with separation " + format_double(separation));
  // Draw sorted offsets in [0, slack) and spread them by the separation. This
  // is uniform over admissible sorted grids and never needs a retry.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.0, slack);
  std::vector<double> offsets(count);
  for (double& x : offsets) x = draw(rng);
  std::sort(offsets.begin(), offsets.end());
  QGrid grid{{}, GridPolicy::random, L};
  for (std::size_t j = 0; j < count; ++j)
    grid.qs.push_back(offsets[j] + separation * static_cast<double>(j));
  return grid;
}

}  // namespace

QGrid make_qgrid(std::size_t max_length, GridPolicy policy, std::uint64_t seed) {
  if (max_length < 1) throw ParameterError("q-grid requires L >= 1");
  switch (policy) {
    case GridPolicy::evenly_spaced: return evenly_spaced(max_length);
    case GridPolicy::random: return random_grid(max_length, seed);
    case GridPolicy::user: break;
  }
  throw ParameterError("make_qgrid: user grids are built with user_qgrid");
}

QGrid user_qgrid(std::vector<double> qs, std::size_t target_length) {
  if (qs.empty()) throw ParameterError("q-grid must not be empty");
  for (double q : qs)
    if (!std::isfinite(q)) throw ParameterError("q must be finite");
  return {std::move(qs), GridPolicy::user, target_length};
}

void validate_recovery_grid(const QGrid& grid) {
  if (grid.qs.empty()) throw ParameterError("q-grid must not be empty");
  for (double q : grid.qs)
    if (!(q >= 0.0 && q < 0.25))
      throw ParameterError("q = " + format_double(q) + " outside [0, 1/4) required for recovery");
  for (std::size_t i = 0; i < grid.qs.size(); ++i)
    for (std::size_t j = i + 1; j < grid.qs.size(); ++j)
      if (grid.qs[i] == grid.qs[j])
        throw ParameterError("duplicate q = " + format_double(grid.qs[i]) + " in grid");
}

}  // namespace maglap
