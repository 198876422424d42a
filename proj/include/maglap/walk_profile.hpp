#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maglap/digraph.hpp"

namespace maglap {

/// Phi_{source,v}(l, k) for l = 0..max_length, k = 0..l and every target v:
/// weighted count of length-l bidirectional walks with exactly k forward edges.
/// In normalized mode each step from node w is divided by w's total degree, so
/// the values are landing probabilities.
class WalkProfile {
 public:
  WalkProfile(std::size_t nodes, std::size_t source, std::size_t max_length, bool normalized);

  std::size_t nodes() const { return nodes_; }
  std::size_t source() const { return source_; }
  std::size_t max_length() const { return max_length_; }
  bool normalized() const { return normalized_; }

  /// Zero for k > l.
  double at(std::size_t l, std::size_t k, std::size_t v) const {
    return k > l ? 0.0 : values_[offset(l, k) + v];
  }
  double& mutable_at(std::size_t l, std::size_t k, std::size_t v) {
    return values_[offset(l, k) + v];
  }

  bool operator==(const WalkProfile&) const = default;

 private:
  std::size_t offset(std::size_t l, std::size_t k) const { return (l * (l + 1) / 2 + k) * nodes_; }

  std::size_t nodes_;
  std::size_t source_;
  std::size_t max_length_;
  bool normalized_;
  std::vector<double> values_;
};

/// Dynamic programme over row vectors P(l, k):
///   P(l, k) = P(l-1, k-1) * F + P(l-1, k) * B
/// with F = A, B = A^T, or F = D^{-1} A, B = D^{-1} A^T when normalized.
WalkProfile walk_profile(const DirectedGraph& g, std::size_t source, std::size_t max_length,
                         bool normalized = false);

inline constexpr std::size_t kEnumerateMaxLength = 8;
inline constexpr std::size_t kEnumerateMaxNodes = 12;

/// Brute-force enumeration of every bidirectional walk (weights multiplied
/// along the walk). Limited to L <= 8, n <= 12.
WalkProfile enumerate_walks(const DirectedGraph& g, std::size_t source, std::size_t max_length);

/// Forward-only diagonal Phi_{u,v}(l, l) for l = 0..max_length.
std::vector<double> forward_walk_counts(const DirectedGraph& g, std::size_t u, std::size_t v,
                                        std::size_t max_length);

/// min{l : Phi_{u,v}(l,l) > 0}, searching l <= max_length (default n-1).
std::optional<std::size_t> shortest_path_distance(const DirectedGraph& g, std::size_t u,
                                                  std::size_t v,
                                                  std::optional<std::size_t> max_length = {});

/// max{l : Phi_{u,v}(l,l) > 0}. Throws PreconditionError on cyclic graphs.
std::optional<std::size_t> longest_path_distance(const DirectedGraph& g, std::size_t u,
                                                 std::size_t v);

}  // namespace maglap
