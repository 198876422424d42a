#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "maglap/matrix.hpp"

namespace maglap {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

/// Weighted directed graph on nodes 0..n-1, at most one edge per ordered pair.
///
/// Edges are kept sorted by (source, target), so two graphs with the same edge
/// set compare equal regardless of insertion order. Immutable after construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  /// Throws ParameterError on out-of-range endpoints, duplicate ordered pairs,
  /// or self-loops (unless `allow_self_loops`).
  explicit DirectedGraph(std::size_t n, std::vector<Edge> edges = {},
                         bool allow_self_loops = false);

  std::size_t node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Both (u,v) and (v,u) present for some pair.
  bool has_antiparallel() const { return antiparallel_.has_value(); }
  /// First antiparallel pair (u < v) in edge order, if any.
  const std::optional<std::pair<std::size_t, std::size_t>>& antiparallel_pair() const {
    return antiparallel_;
  }

  /// All weights equal to 1.
  bool is_unweighted() const;

  /// Dense weight matrix W with W(u,v) = weight of u->v (0 when absent).
  RMatrix weight_matrix() const;

  /// Out-neighbour and in-neighbour lists, as indices into edges().
  const std::vector<std::vector<std::size_t>>& out_edges() const { return out_; }
  const std::vector<std::vector<std::size_t>>& in_edges() const { return in_; }

  /// Graph with every edge reversed.
  DirectedGraph reversed() const;

  /// Graph with node i renamed to perm[i].
  DirectedGraph relabeled(const std::vector<std::size_t>& perm) const;

  bool operator==(const DirectedGraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::optional<std::pair<std::size_t, std::size_t>> antiparallel_;
};

/// Copy with the reverse edge of every antiparallel pair dropped: for u < v
/// the edge u->v is kept.
DirectedGraph without_antiparallel(const DirectedGraph& g);

/// Kahn topological order; nullopt when the graph has a directed cycle.
std::optional<std::vector<std::size_t>> topological_order(const DirectedGraph& g);
inline bool is_acyclic(const DirectedGraph& g) { return topological_order(g).has_value(); }

enum class GraphKind { er_directed, dag };

struct GenSpec {
  GraphKind kind = GraphKind::er_directed;
  std::size_t n_min = 16;
  std::size_t n_max = 63;
  double avg_degree = 1.5;
  std::uint64_t seed = 0;
};

/// Random directed graph. Each admissible ordered pair gets an edge with
/// probability avg_degree / (n-1); for `dag` only pairs that respect a random
/// topological order are admissible. Pure function of the spec.
DirectedGraph generate(const GenSpec& spec);

struct Component {
  DirectedGraph graph;
  /// original_index[i] is the node in the input graph that became node i.
  std::vector<std::size_t> original_index;
};

/// Induced subgraph on the largest weakly connected component. Equal sizes are
/// broken in favour of the component holding the smallest node index. Relative
/// node order is preserved.
Component largest_weakly_connected_component(const DirectedGraph& g);

// Edge-list text format: first non-comment line is n, then "u v" or "u v w".
DirectedGraph parse_edge_list(std::istream& in);
DirectedGraph read_edge_list(const std::filesystem::path& path);
void format_edge_list(const DirectedGraph& g, std::ostream& out);
void write_edge_list(const DirectedGraph& g, const std::filesystem::path& path);

}  // namespace maglap
