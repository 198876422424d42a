#include "maglap/walk_profile.hpp"

#include <string>

#include "maglap/errors.hpp"
#include "maglap/magnetic.hpp"

namespace maglap {

WalkProfile::WalkProfile(std::size_t nodes, std::size_t source, std::size_t max_length,
                         bool normalized)
    : nodes_(nodes),
      source_(source),
      max_length_(max_length),
      normalized_(normalized),
      values_((max_length + 1) * (max_length + 2) / 2 * nodes, 0.0) {}

namespace {

void check_source(const DirectedGraph& g, std::size_t source) {
  if (source >= g.node_count())
    throw ParameterError("source " + std::to_string(source) + " out of range for n=" +
                         std::to_string(g.node_count()));
}

// Per-node factor applied when leaving a node.
std::vector<double> step_scale(const DirectedGraph& g, bool normalized) {
  std::vector<double> scale(g.node_count(), 1.0);
  if (!normalized) return scale;
  const std::vector<double> d = total_degree(g);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw PreconditionError("normalized walk profile: node " + std::to_string(i) +
                              " has zero total degree");
    scale[i] = 1.0 / d[i];
  }
  return scale;
}

}  // namespace

WalkProfile walk_profile(const DirectedGraph& g, std::size_t source, std::size_t max_length,
                         bool normalized) {
  check_source(g, source);
  const std::vector<double> scale = step_scale(g, normalized);
  WalkProfile wp(g.node_count(), source, max_length, normalized);
  wp.mutable_at(0, 0, source) = 1.0;
  for (std::size_t l = 1; l <= max_length; ++l) {
    for (std::size_t k = 0; k <= l; ++k) {
      for (const Edge& e : g.edges()) {
        // forward: e.source -> e.target
        if (k >= 1) {
          const double from = wp.at(l - 1, k - 1, e.source);
          if (from != 0.0) wp.mutable_at(l, k, e.target) += from * e.weight * scale[e.source];
        }
        // backward: e.target -> e.source
        if (k <= l - 1) {
          const double from = wp.at(l - 1, k, e.target);
          if (from != 0.0) wp.mutable_at(l, k, e.source) += from * e.weight * scale[e.target];
        }
      }
    }
  }
  return wp;
}

namespace {

struct Enumerator {
  const DirectedGraph& g;
  WalkProfile& out;
  std::size_t max_length;

  void extend(std::size_t node, std::size_t length, std::size_t forward, double weight) {
    out.mutable_at(length, forward, node) += weight;
    if (length == max_length) return;
    for (std::size_t idx : g.out_edges()[node]) {
      const Edge& e = g.edges()[idx];
      extend(e.target, length + 1, forward + 1, weight * e.weight);
    }
    for (std::size_t idx : g.in_edges()[node]) {
      const Edge& e = g.edges()[idx];
      extend(e.source, length + 1, forward, weight * e.weight);
    }
  }
};

}  // namespace

WalkProfile enumerate_walks(const DirectedGraph& g, std::size_t source, std::size_t max_length) {
  check_source(g, source);
  if (max_length > kEnumerateMaxLength || g.node_count() > kEnumerateMaxNodes)
    throw ParameterError("enumerate_walks limited to L <= " + std::to_string(kEnumerateMaxLength) +
                         " and n <= " + std::to_string(kEnumerateMaxNodes));
  WalkProfile wp(g.node_count(), source, max_length, false);
  Enumerator{g, wp, max_length}.extend(source, 0, 0, 1.0);
  return wp;
}

std::vector<double> forward_walk_counts(const DirectedGraph& g, std::size_t u, std::size_t v,
                                        std::size_t max_length) {
  check_source(g, u);
  check_source(g, v);
  std::vector<double> row(g.node_count(), 0.0), next(g.node_count());
  row[u] = 1.0;
  std::vector<double> counts{row[v]};
  for (std::size_t l = 1; l <= max_length; ++l) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const Edge& e : g.edges()) next[e.target] += row[e.source] * e.weight;
    row.swap(next);
    counts.push_back(row[v]);
  }
  return counts;
}

std::optional<std::size_t> shortest_path_distance(const DirectedGraph& g, std::size_t u,
                                                  std::size_t v,
                                                  std::optional<std::size_t> max_length) {
  const std::size_t limit = max_length.value_or(g.node_count() > 0 ? g.node_count() - 1 : 0);
  const std::vector<double> counts = forward_walk_counts(g, u, v, limit);
  for (std::size_t l = 0; l < counts.size(); ++l)
    if (counts[l] > 0.0) return l;
  return std::nullopt;
}

std::optional<std::size_t> longest_path_distance(const DirectedGraph& g, std::size_t u,
                                                 std::size_t v) {
  if (!is_acyclic(g)) throw PreconditionError("longest path distance requires an acyclic graph");
  // No walk in a DAG is longer than n-1 edges.
  const std::vector<double> counts =
      forward_walk_counts(g, u, v, g.node_count() > 0 ? g.node_count() - 1 : 0);
  for (std::size_t l = counts.size(); l-- > 0;)
    if (counts[l] > 0.0) return l;
  return std::nullopt;
}

}  // namespace maglap
