#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "maglap/digraph.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/matrix.hpp"
#include "maglap/qgrid.hpp"
#include "maglap/spectral.hpp"

namespace maglap {

struct SpectralFilter {
  std::string name;
  std::function<double(double)> apply;
};

/// Scalar maps applied elementwise to an eigenvalue list.
class FilterBank {
 public:
  FilterBank() = default;
  explicit FilterBank(std::vector<SpectralFilter> filters) : filters_(std::move(filters)) {}

  /// exp(-t lambda) for each t.
  static FilterBank heat(const std::vector<double>& times);
  /// lambda^p for p = 0..count-1.
  static FilterBank powers(std::size_t count);
  /// Heat kernels at t = 0.5, 1, 2 followed by powers p = 0..3.
  static FilterBank standard();

  FilterBank& append(SpectralFilter filter) {
    filters_.push_back(std::move(filter));
    return *this;
  }

  std::size_t size() const { return filters_.size(); }
  const std::vector<SpectralFilter>& filters() const { return filters_; }
  const SpectralFilter& operator[](std::size_t i) const { return filters_[i]; }

 private:
  std::vector<SpectralFilter> filters_;
};

/// Re and Im parts of V diag(phi(lambda)) V^H for each filter phi.
struct FeatureStack {
  std::vector<RMatrix> real;
  std::vector<RMatrix> imag;
  /// max |Im| on the diagonal and max |M - M^H| before the split; zero up to
  /// rounding because the products are Hermitian.
  double hermitian_residue = 0.0;

  std::size_t filters() const { return real.size(); }
};

FeatureStack spectral_features(const EigenSystem& e, const FilterBank& bank);

/// Largest entrywise difference across all channels.
double max_feature_deviation(const FeatureStack& a, const FeatureStack& b);

/// Node readout per channel block: Re diagonal for each filter, then Im row
/// sums for each filter (2m columns).
RMatrix node_readout(const FeatureStack& features);

/// Stable positional encoding over a q-grid.
struct StablePE {
  QGrid grid;
  MatrixMode mode = MatrixMode::laplacian;
  std::vector<std::string> filter_names;
  RMatrix node_pe;  // n x (2m * Q)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  RMatrix edge_pe;  // |pairs| x (2m * Q): Re channels then Im channels, per q
};

StablePE stable_pe(const DirectedGraph& g, const QGrid& grid, const FilterBank& bank,
                   MatrixMode mode = MatrixMode::laplacian,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {});

/// Degenerate eigenvalues closer than this are mixed together by the gauge
/// generator.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Eigenvalue index ranges [begin, end) of near-equal eigenvalues.
std::vector<std::pair<std::size_t, std::size_t>> eigenvalue_groups(const EigenSystem& e,
                                                                   double tolerance);

/// Haar-distributed random unitary of size n.
CMatrix random_unitary(std::size_t n, std::uint64_t seed);

/// V -> V U with U block-diagonal over the eigenvalue groups (Haar within each
/// group, which includes a random phase per vector).
EigenSystem apply_random_gauge(const EigenSystem& e, std::uint64_t seed,
                               bool phases_only = false);

/// Max deviation of spectral_features under `trials` random gauges.
double gauge_invariance_check(const MagneticMatrix& m, const FilterBank& bank, std::size_t trials,
                              std::uint64_t seed, bool phases_only = false);

/// ||features(q) - features(0)||_max for each q in a strictly decreasing list.
std::vector<double> q_continuity_profile(const DirectedGraph& g, const FilterBank& bank,
                                         const std::vector<double>& q_list,
                                         MatrixMode mode = MatrixMode::laplacian);

}  // namespace maglap
