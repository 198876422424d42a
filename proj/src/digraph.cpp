#include "maglap/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include "maglap/errors.hpp"
#include "maglap/format.hpp"

namespace maglap {

DirectedGraph::DirectedGraph(std::size_t n, std::vector<Edge> edges, bool allow_self_loops)
    : n_(n), edges_(std::move(edges)), out_(n), in_(n) {
  for (const Edge& e : edges_) {
    if (e.source >= n_ || e.target >= n_)
      throw ParameterError("edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                           ") out of range for n=" + std::to_string(n_));
    if (e.source == e.target && !allow_self_loops)
      throw ParameterError("self-loop at node " + std::to_string(e.source));
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].source == edges_[i - 1].source && edges_[i].target == edges_[i - 1].target)
      throw ParameterError("duplicate edge (" + std::to_string(edges_[i].source) + "," +
                           std::to_string(edges_[i].target) + ")");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].source].push_back(i);
    in_[edges_[i].target].push_back(i);
  }
  for (const Edge& e : edges_) {
    if (e.source == e.target) continue;
    for (std::size_t idx : out_[e.target]) {
      if (edges_[idx].target == e.source) {
        auto pair = std::minmax(e.source, e.target);
        if (!antiparallel_) antiparallel_ = std::make_pair(pair.first, pair.second);
      }
    }
    if (antiparallel_) break;
  }
}

bool DirectedGraph::is_unweighted() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

RMatrix DirectedGraph::weight_matrix() const {
  RMatrix w(n_, n_);
  for (const Edge& e : edges_) w(e.source, e.target) = e.weight;
  return w;
}

DirectedGraph DirectedGraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const Edge& e : edges_) rev.push_back({e.target, e.source, e.weight});
  return DirectedGraph(n_, std::move(rev), true);
}

DirectedGraph DirectedGraph::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw ParameterError("permutation size mismatch");
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const Edge& e : edges_) mapped.push_back({perm[e.source], perm[e.target], e.weight});
  return DirectedGraph(n_, std::move(mapped), true);
}

DirectedGraph without_antiparallel(const DirectedGraph& g) {
  const RMatrix w = g.weight_matrix();
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (e.source < e.target || w(e.target, e.source) == 0.0) kept.push_back(e);
  return DirectedGraph(g.node_count(), std::move(kept));
}

std::optional<std::vector<std::size_t>> topological_order(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : g.edges()) ++indeg[e.target];
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t idx : g.out_edges()[order[head]]) {
      std::size_t t = g.edges()[idx].target;
      if (--indeg[t] == 0) order.push_back(t);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

DirectedGraph generate(const GenSpec& spec) {
  if (spec.n_min > spec.n_max || spec.n_max == 0)
    throw ParameterError("empty node-count range");
  if (!(spec.avg_degree > 0.0)) throw ParameterError("avg_degree must be positive");

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick_n(std::max<std::size_t>(spec.n_min, 1),
                                                    spec.n_max);
  const std::size_t n = pick_n(rng);
  if (n == 1) return DirectedGraph(1);

  const double p = spec.avg_degree / static_cast<double>(n - 1);
  if (p > 1.0)
    throw ParameterError("edge probability " + format_double(p) + " exceeds 1 (avg_degree " +
                         format_double(spec.avg_degree) + ", n " + std::to_string(n) + ")");

  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  if (spec.kind == GraphKind::er_directed) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && coin(rng)) edges.push_back({u, v, 1.0});
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) edges.push_back({order[i], order[j], 1.0});
  }
  return DirectedGraph(n, std::move(edges));
}

Component largest_weakly_connected_component(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return {g, {}};

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    std::size_t a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Roots are the minimum index of their component, so scanning in index order
  // and keeping strictly larger sizes implements the tie-break.
  std::vector<std::size_t> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size[find(v)];
  std::size_t best = find(0);
  for (std::size_t v = 0; v < n; ++v)
    if (find(v) == v && size[v] > size[best]) best = v;

  std::vector<std::size_t> new_index(n, n);
  Component comp;
  for (std::size_t v = 0; v < n; ++v) {
    if (find(v) == best) {
      new_index[v] = comp.original_index.size();
      comp.original_index.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (new_index[e.source] < n && new_index[e.target] < n)
      edges.push_back({new_index[e.source], new_index[e.target], e.weight});
  comp.graph = DirectedGraph(comp.original_index.size(), std::move(edges), true);
  return comp;
}

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc{} && res.ptr == tok.data() + tok.size();
}

}  // namespace

DirectedGraph parse_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_ws(line);
    if (!n) {
      std::size_t value = 0;
      if (tokens.size() != 1 || !parse_number(tokens[0], value))
        throw ParseError(line_no, "expected node count, got '" + std::string(line) + "'");
      n = value;
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError(line_no, "expected 'u v' or 'u v w', got '" + std::string(line) + "'");
    Edge e;
    if (!parse_number(tokens[0], e.source) || !parse_number(tokens[1], e.target))
      throw ParseError(line_no, "bad node index in '" + std::string(line) + "'");
    if (tokens.size() == 3 && (!parse_number(tokens[2], e.weight) || !std::isfinite(e.weight)))
      throw ParseError(line_no, "bad weight in '" + std::string(line) + "'");
    if (e.source >= *n || e.target >= *n)
      throw ParseError(line_no, "node index out of range for n=" + std::to_string(*n));
    if (e.source == e.target) throw ParseError(line_no, "self-loop");
    auto [it, inserted] = seen.emplace(std::make_pair(e.source, e.target), line_no);
    if (!inserted)
      throw ParseError(line_no, "duplicate edge (" + std::to_string(e.source) + "," +
                                    std::to_string(e.target) + "), first on line " +
                                    std::to_string(it->second));
    edges.push_back(e);
  }
  if (!n) throw ParseError(line_no, "missing node count");
  return DirectedGraph(*n, std::move(edges));
}

DirectedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  return parse_edge_list(in);
}

void format_edge_list(const DirectedGraph& g, std::ostream& out) {
  out << g.node_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.source << ' ' << e.target;
    if (e.weight != 1.0) out << ' ' << format_double(e.weight);
    out << '\n';
  }
}

void write_edge_list(const DirectedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path.string());
  format_edge_list(g, out);
}

}  // namespace maglap
