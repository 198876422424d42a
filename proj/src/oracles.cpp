#include "maglap/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "maglap/errors.hpp"

namespace maglap::oracle {

std::optional<std::size_t> bfs_distance(const DirectedGraph& g, std::size_t u, std::size_t v) {
  const std::size_t n = g.node_count();
  if (u >= n || v >= n) throw ParameterError("node out of range");
  std::vector<std::optional<std::size_t>> dist(n);
  dist[u] = 0;
  std::deque<std::size_t> queue{u};
  while (!queue.empty()) {
    const std::size_t w = queue.front();
    queue.pop_front();
    for (std::size_t e : g.out_edges()[w]) {
      const std::size_t t = g.edges()[e].target;
      if (dist[t]) continue;
      dist[t] = *dist[w] + 1;
      queue.push_back(t);
    }
  }
  return dist[v];
}

std::optional<std::size_t> dag_longest_path(const DirectedGraph& g, std::size_t u, std::size_t v) {
  const std::size_t n = g.node_count();
  if (u >= n || v >= n) throw ParameterError("node out of range");
  const auto order = topological_order(g);
  if (!order) throw PreconditionError("graph has a directed cycle");
  std::vector<std::optional<std::size_t>> best(n);
  best[u] = 0;
  for (std::size_t w : *order) {
    if (!best[w]) continue;
    for (std::size_t e : g.out_edges()[w]) {
      const std::size_t t = g.edges()[e].target;
      if (!best[t] || *best[t] < *best[w] + 1) best[t] = *best[w] + 1;
    }
  }
  return best[v];
}

RMatrix symmetrized_laplacian(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  RMatrix s(n, n);
  for (const Edge& e : g.edges()) {
    s(e.source, e.target) += e.weight;
    s(e.target, e.source) += e.weight;
  }
  std::vector<double> inv_sqrt(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += s(i, j);
    if (d > 0.0) inv_sqrt[i] = 1.0 / std::sqrt(d);
  }
  RMatrix lap(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      lap(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt[i] * s(i, j) * inv_sqrt[j];
  return lap;
}

}  // namespace maglap::oracle
