#include "maglap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "maglap/counterexample.hpp"
#include "maglap/digraph.hpp"
#include "maglap/errors.hpp"
#include "maglap/format.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/parallel.hpp"
#include "maglap/qgrid.hpp"
#include "maglap/recovery.hpp"
#include "maglap/spectral.hpp"
#include "maglap/spefunc.hpp"
#include "maglap/verify.hpp"
#include "maglap/walk_profile.hpp"

#ifndef MAGLAP_VERSION
#define MAGLAP_VERSION "dev"
#endif

namespace maglap::cli {

namespace {

using json = nlohmann::ordered_json;

// Malformed flag values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_index(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, char sep,
                                               std::string_view what) {
  const auto at = text.find(sep);
  if (at == std::string::npos) throw UsageError("expected " + std::string(what));
  return {parse_index(std::string_view(text).substr(0, at), what),
          parse_index(std::string_view(text).substr(at + 1), what)};
}

// "20" or "16..63"
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto at = text.find("..");
  if (at == std::string::npos) {
    const std::size_t n = parse_index(text, "--n");
    return {n, n};
  }
  return {parse_index(std::string_view(text).substr(0, at), "--n"),
          parse_index(std::string_view(text).substr(at + 2), "--n")};
}

// "L:even" or "L:random"
QGrid parse_qgrid(const std::string& text, std::uint64_t seed) {
  const auto at = text.find(':');
  if (at == std::string::npos) throw UsageError("--q-grid expects L:even or L:random");
  const std::size_t L = parse_index(std::string_view(text).substr(0, at), "--q-grid length");
  const std::string policy = text.substr(at + 1);
  if (policy == "even") return make_qgrid(L, GridPolicy::evenly_spaced);
  if (policy == "random") return make_qgrid(L, GridPolicy::random, seed);
  throw UsageError("--q-grid policy must be 'even' or 'random', got '" + policy + "'");
}

std::optional<QGrid> resolve_grid(const std::vector<double>& qs, const std::string& grid_spec,
                                  std::uint64_t seed) {
  if (!qs.empty() && !grid_spec.empty()) throw UsageError("give either --q or --q-grid, not both");
  if (!grid_spec.empty()) return parse_qgrid(grid_spec, seed);
  if (!qs.empty()) return user_qgrid(qs);
  return std::nullopt;
}

json grid_json(const QGrid& grid) {
  return {{"policy", std::string(to_string(grid.policy))},
          {"target_length", grid.target_length},
          {"q", grid.qs}};
}

// Writes to `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ParameterError("cannot write " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Manifest {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  json inputs = json::array();
  json outputs = json::array();
  json results = json::object();
  std::string path;  // explicit --manifest
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(std::ostream& err) const {
    json doc;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    doc["results"] = results;
    doc["tool_version"] = MAGLAP_VERSION;
    doc["threads"] = thread_count();
    doc["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string target = path;
    if (target.empty())
      for (const auto& o : outputs)
        if (o.is_string()) {
          target = o.get<std::string>() + ".manifest.json";
          break;
        }
    if (target.empty()) {
      err << doc.dump(2) << '\n';
      return;
    }
    std::ofstream file(target, std::ios::binary);
    if (!file) throw ParameterError("cannot write manifest " + target);
    file << doc.dump(2) << '\n';
  }
};

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::string kind = "er";
  std::string n = "16..63";
  double avg_degree = 1.5;
  std::uint64_t seed = 0;
  bool keep_all = false;
  std::string output;
};

int cmd_gen(const GenArgs& a, Manifest& m, std::ostream& out) {
  GenSpec spec;
  if (a.kind == "er" || a.kind == "er_directed")
    spec.kind = GraphKind::er_directed;
  else if (a.kind == "dag")
    spec.kind = GraphKind::dag;
  else
    throw UsageError("--kind must be er or dag");
  std::tie(spec.n_min, spec.n_max) = parse_range(a.n);
  spec.avg_degree = a.avg_degree;
  spec.seed = a.seed;

  DirectedGraph g = generate(spec);
  const std::size_t generated_nodes = g.node_count();
  if (!a.keep_all) g = largest_weakly_connected_component(g).graph;

  m.parameters = {{"kind", spec.kind == GraphKind::dag ? "dag" : "er"},
                  {"n_min", spec.n_min},
                  {"n_max", spec.n_max},
                  {"avg_degree", spec.avg_degree},
                  {"largest_component", !a.keep_all}};
  m.seed = a.seed;
  m.results = {{"generated_nodes", generated_nodes},
               {"nodes", g.node_count()},
               {"edges", g.edge_count()}};
  Sink sink(a.output, out);
  format_edge_list(g, sink.get());
  if (!a.output.empty()) m.outputs.push_back(a.output);
  return kSuccess;
}

// ---- pe ------------------------------------------------------------------

struct PeArgs {
  std::string graph;
  std::vector<double> qs;
  std::string grid;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k;
  std::string mode = "lap";
  std::string format = "csv";
  bool svd = false;
  bool stable = false;
  std::string output;
};

void write_pe_csv(const PEMatrix& pe, std::ostream& os) {
  os << "node,block,q,column,eigenvalue,re,im\n";
  for (std::size_t node = 0; node < pe.nodes; ++node)
    for (std::size_t b = 0; b < pe.grid.size(); ++b)
      for (std::size_t c = 0; c < pe.k; ++c) {
        const cplx z = pe.at(node, b, c);
        os << node << ',' << b << ',' << format_double(pe.grid.qs[b]) << ',' << c << ','
           << format_double(pe.eigenvalue_blocks[b][c]) << ',' << format_double(z.real()) << ','
           << format_double(z.imag()) << '\n';
      }
}

json pe_json(const PEMatrix& pe) {
  json blocks = json::array();
  for (std::size_t b = 0; b < pe.grid.size(); ++b) {
    json re = json::array(), im = json::array();
    for (std::size_t node = 0; node < pe.nodes; ++node) {
      std::vector<double> r, i;
      for (std::size_t c = 0; c < pe.k; ++c) {
        r.push_back(pe.at(node, b, c).real());
        i.push_back(pe.at(node, b, c).imag());
      }
      re.push_back(r);
      im.push_back(i);
    }
    blocks.push_back({{"q", pe.grid.qs[b]},
                      {"eigenvalues", pe.eigenvalue_blocks[b]},
                      {"re", re},
                      {"im", im}});
  }
  return {{"mode", std::string(to_string(pe.mode))}, {"k", pe.k}, {"blocks", blocks}};
}

void write_svd_csv(const SvdPE& pe, std::ostream& os) {
  os << "node,block,column,singular_value,value\n";
  const std::size_t k = pe.u.cols();
  for (std::size_t node = 0; node < pe.u.rows(); ++node)
    for (const char* block : {"U", "W"})
      for (std::size_t c = 0; c < k; ++c) {
        const double value = block[0] == 'U' ? pe.u(node, c) : pe.w(node, c);
        os << node << ',' << block << ',' << c << ',' << format_double(pe.singular_values[c]) << ','
           << format_double(value) << '\n';
      }
}

void write_stable_csv(const StablePE& pe, std::ostream& os) {
  const std::size_t m = pe.filter_names.size();
  os << "node,block,q,filter,channel,value\n";
  for (std::size_t node = 0; node < pe.node_pe.rows(); ++node)
    for (std::size_t b = 0; b < pe.grid.size(); ++b)
      for (std::size_t c = 0; c < 2 * m; ++c)
        os << node << ',' << b << ',' << format_double(pe.grid.qs[b]) << ','
           << pe.filter_names[c % m] << ',' << (c < m ? "re_diag" : "im_rowsum") << ','
           << format_double(pe.node_pe(node, b * 2 * m + c)) << '\n';
}

int cmd_pe(const PeArgs& a, Manifest& m, std::ostream& out) {
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
  const DirectedGraph g = read_edge_list(a.graph);
  m.inputs.push_back(a.graph);
  m.parameters = {{"k", a.k ? json(*a.k) : json(nullptr)},
                  {"mode", a.mode},
                  {"format", a.format},
                  {"svd", a.svd},
                  {"stable", a.stable}};
  Sink sink(a.output, out);
  if (!a.output.empty()) m.outputs.push_back(a.output);

  if (a.svd) {
    const SvdPE pe = svd_pe(g, a.k);
    m.results = {{"singular_values", pe.singular_values}};
    if (a.format == "csv") {
      write_svd_csv(pe, sink.get());
    } else {
      json doc = {{"singular_values", pe.singular_values}};
      for (const auto& [name, mat] : {std::pair{"u", &pe.u}, std::pair{"w", &pe.w}}) {
        json rows = json::array();
        for (std::size_t r = 0; r < mat->rows(); ++r) {
          std::vector<double> row;
          for (std::size_t c = 0; c < mat->cols(); ++c) row.push_back((*mat)(r, c));
          rows.push_back(row);
        }
        doc[name] = rows;
      }
      sink.get() << doc.dump(2) << '\n';
    }
    return kSuccess;
  }

  const std::optional<QGrid> grid = resolve_grid(a.qs, a.grid, a.seed);
  if (!grid) throw UsageError("pe needs --q, --q-grid or --svd");
  m.parameters["grid"] = grid_json(*grid);
  if (grid->policy == GridPolicy::random) m.seed = a.seed;
  const MatrixMode mode = parse_matrix_mode(a.mode);

  if (a.stable) {
    const StablePE pe = stable_pe(g, *grid, FilterBank::standard(), mode);
    m.results = {{"filters", pe.filter_names}};
    if (a.format == "csv") {
      write_stable_csv(pe, sink.get());
    } else {
      json rows = json::array();
      for (std::size_t r = 0; r < pe.node_pe.rows(); ++r) {
        std::vector<double> row;
        for (std::size_t c = 0; c < pe.node_pe.cols(); ++c) row.push_back(pe.node_pe(r, c));
        rows.push_back(row);
      }
      sink.get() << json{{"filters", pe.filter_names}, {"mode", a.mode}, {"node_pe", rows}}.dump(2)
                 << '\n';
    }
    return kSuccess;
  }

  const PEMatrix pe = multi_q_pe(g, *grid, a.k, mode);
  double imag = 0.0;
  for (std::size_t r = 0; r < pe.values.rows(); ++r)
    for (std::size_t c = 0; c < pe.values.cols(); ++c)
      imag = std::max(imag, std::abs(pe.values(r, c).imag()));
  m.results = {{"blocks", pe.grid.size()}, {"k", pe.k}, {"max_abs_imag", imag}};
  if (a.format == "csv")
    write_pe_csv(pe, sink.get());
  else
    sink.get() << pe_json(pe).dump(2) << '\n';
  return kSuccess;
}

// ---- wp ------------------------------------------------------------------

struct WpArgs {
  std::string graph;
  std::optional<std::size_t> source;
  std::size_t L = 4;
  bool normalized = false;
  std::string pair;
  std::string output;
};

int cmd_wp(const WpArgs& a, Manifest& m, std::ostream& out, std::ostream& err) {
  const DirectedGraph g = read_edge_list(a.graph);
  m.inputs.push_back(a.graph);
  std::optional<std::size_t> target;
  std::size_t source = 0;
  if (!a.pair.empty()) {
    const auto [u, v] = parse_pair(a.pair, ',', "--pair u,v");
    if (a.source && *a.source != u) throw UsageError("--source disagrees with --pair");
    source = u;
    target = v;
  } else if (a.source) {
    source = *a.source;
  } else {
    throw UsageError("wp needs --source or --pair");
  }
  if (source >= g.node_count() || (target && *target >= g.node_count()))
    throw ParameterError("node index out of range for a graph with " +
                         std::to_string(g.node_count()) + " nodes");

  const WalkProfile wp = walk_profile(g, source, a.L, a.normalized);
  m.parameters = {{"source", source},
                  {"target", target ? json(*target) : json(nullptr)},
                  {"L", a.L},
                  {"normalized", a.normalized}};
  Sink sink(a.output, out);
  if (!a.output.empty()) m.outputs.push_back(a.output);
  std::ostream& os = sink.get();
  os << "l,k,v,value\n";
  for (std::size_t l = 0; l <= a.L; ++l)
    for (std::size_t k = 0; k <= l; ++k)
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (target && v != *target) continue;
        os << l << ',' << k << ',' << v << ',' << format_double(wp.at(l, k, v)) << '\n';
      }

  if (target) {
    const auto spd = shortest_path_distance(g, source, *target);
    m.results["spd"] = spd ? json(*spd) : json(nullptr);
    err << "spd(" << source << "," << *target << ") = " << (spd ? std::to_string(*spd) : "none")
        << '\n';
    if (is_acyclic(g)) {
      const auto lpd = longest_path_distance(g, source, *target);
      m.results["lpd"] = lpd ? json(*lpd) : json(nullptr);
      err << "lpd(" << source << "," << *target << ") = " << (lpd ? std::to_string(*lpd) : "none")
          << '\n';
    }
  }
  return kSuccess;
}

// ---- recover -------------------------------------------------------------

struct RecoverArgs {
  std::string graph;
  std::size_t L = 4;
  std::vector<double> qs;
  std::string grid;
  std::uint64_t seed = 0;
  std::string route = "spectral";
  bool normalized = false;
  bool no_augment = false;
  std::vector<std::string> pairs;
  std::string report;
  std::string output;
};

int cmd_recover(const RecoverArgs& a, Manifest& m, std::ostream& out, std::ostream& err) {
  const DirectedGraph g = read_edge_list(a.graph);
  m.inputs.push_back(a.graph);
  const std::optional<QGrid> resolved = resolve_grid(a.qs, a.grid, a.seed);
  const QGrid grid = resolved ? *resolved : make_qgrid(a.L, GridPolicy::evenly_spaced);
  if (grid.policy == GridPolicy::random) m.seed = a.seed;
  if (a.route != "spectral" && a.route != "matpow")
    throw UsageError("--route must be spectral or matpow");
  const PowerRoute route = a.route == "matpow" ? PowerRoute::matpow : PowerRoute::spectral;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const std::string& p : a.pairs) pairs.push_back(parse_pair(p, ',', "--pair u,v"));
  if (pairs.empty())
    for (std::size_t u = 0; u < g.node_count(); ++u)
      for (std::size_t v = 0; v < g.node_count(); ++v) pairs.emplace_back(u, v);

  m.parameters = {{"L", a.L},
                  {"grid", grid_json(grid)},
                  {"route", a.route},
                  {"normalized", a.normalized},
                  {"augmented", !a.no_augment},
                  {"pairs", a.pairs.empty() ? json("all") : json(a.pairs)}};

  json report = {{"L", a.L}, {"grid", grid_json(grid)}, {"route", a.route},
                 {"normalized", a.normalized}};
  auto write_report = [&] {
    if (a.report.empty()) return;
    std::ofstream file(a.report, std::ios::binary);
    if (!file) throw ParameterError("cannot write " + a.report);
    file << report.dump(2) << '\n';
    m.outputs.push_back(a.report);
  };

  const FourierSystemBuilder builder(g, grid, a.L, route, a.normalized, !a.no_augment);
  const FourierSolver solver(builder.fourier());
  report["rank"] = solver.rank();
  report["required_rank"] = solver.required_rank();
  report["rows"] = builder.fourier().rows();
  report["singular_values"] = solver.singular_values();
  m.results = {{"rank", solver.rank()}, {"required_rank", solver.required_rank()}};

  if (!solver.full_rank()) {
    const std::string diagnosis =
        "ill-posed: Fourier matrix has rank " + std::to_string(solver.rank()) + " < " +
        std::to_string(solver.required_rank()) + " unknowns; at least " +
        std::to_string(required_potentials(a.L)) + " distinct potentials are needed for L = " +
        std::to_string(a.L);
    report["status"] = "ill_posed";
    report["condition_number"] = nullptr;
    report["diagnosis"] = diagnosis;
    m.results["status"] = "ill_posed";
    write_report();
    err << diagnosis << '\n';
    return kNumerical;
  }
  report["condition_number"] = solver.condition_number();

  for (const auto& [u, v] : pairs)
    if (u >= g.node_count() || v >= g.node_count())
      throw ParameterError("pair (" + std::to_string(u) + "," + std::to_string(v) +
                           ") out of range");

  // Per-pair work is independent; results land in their own slots.
  std::vector<Recovery> recoveries(pairs.size());
  std::vector<double> errors(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [u, v] = pairs[i];
    recoveries[i] = recover_walk_profile(builder.system(u, v), solver);
    const WalkProfile truth = walk_profile(g, u, a.L, a.normalized);
    double e = 0.0;
    for (std::size_t l = 0; l <= a.L; ++l)
      for (std::size_t k = 0; k <= l; ++k)
        e = std::max(e, std::abs(recoveries[i].at(l, k) - truth.at(l, k, v)));
    errors[i] = e;
  });

  double max_error = 0.0, max_residual = 0.0;
  json per_pair = json::array();
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    max_error = std::max(max_error, errors[i]);
    max_residual = std::max(max_residual, recoveries[i].residual);
    per_pair.push_back({{"u", pairs[i].first},
                        {"v", pairs[i].second},
                        {"max_error", errors[i]},
                        {"residual", recoveries[i].residual}});
    for (const std::string& w : recoveries[i].warnings)
      warnings.push_back("(" + std::to_string(pairs[i].first) + "," +
                         std::to_string(pairs[i].second) + ") " + w);
  }
  report["status"] = "ok";
  report["max_error"] = max_error;
  report["max_residual"] = max_residual;
  report["warnings"] = warnings;
  report["pairs"] = per_pair;
  m.results = {{"status", "ok"},
               {"rank", solver.rank()},
               {"condition_number", solver.condition_number()},
               {"max_error", max_error},
               {"max_residual", max_residual}};
  write_report();

  Sink sink(a.output, out);
  if (!a.output.empty()) m.outputs.push_back(a.output);
  std::ostream& os = sink.get();
  os << "u,v,l,k,value\n";
  for (const Recovery& rec : recoveries)
    for (std::size_t l = 0; l <= a.L; ++l)
      for (std::size_t k = 0; k <= l; ++k)
        os << rec.u << ',' << rec.v << ',' << l << ',' << k << ',' << format_double(rec.at(l, k))
           << '\n';
  err << "recovered " << pairs.size() << " pairs, max error " << format_double(max_error)
      << ", condition number " << format_double(solver.condition_number()) << '\n';
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  return kSuccess;
}

// ---- counterexample ------------------------------------------------------

struct CounterexampleArgs {
  std::size_t n = 5;
  double q = 0.1;
  std::size_t hub = 0;
  std::optional<double> theta;
  bool spd = false;
};

int cmd_counterexample(const CounterexampleArgs& a, Manifest& m, std::ostream& out) {
  m.parameters = {{"n", a.n},
                  {"q", a.q},
                  {"hub", a.hub},
                  {"theta", a.theta ? json(*a.theta) : json(nullptr)},
                  {"spd", a.spd}};
  if (a.spd) {
    if (a.hub != 0) throw UsageError("--spd uses hub 0");
    const SpdCounterexample s = spd_counterexample(a.n, a.q, a.theta);
    auto show = [](const std::optional<std::size_t>& d) {
      return d ? std::to_string(*d) : std::string("none");
    };
    out << "pair = (" << s.construction.u << "," << s.construction.v << ")\n"
        << "removed_edge = " << s.construction.hub << "->" << s.removed_target << '\n'
        << "spd_original = " << show(s.spd_original) << '\n'
        << "spd_modified = " << show(s.spd_modified) << '\n'
        << "pe_discrepancy = " << format_double(s.pe_discrepancy) << '\n';
    m.results = {{"spd_original", s.spd_original ? json(*s.spd_original) : json(nullptr)},
                 {"spd_modified", s.spd_modified ? json(*s.spd_modified) : json(nullptr)},
                 {"pe_discrepancy", s.pe_discrepancy}};
    return kSuccess;
  }
  CounterexampleOptions opt;
  opt.nodes = a.n;
  opt.q = a.q;
  opt.hub = a.hub;
  opt.theta = a.theta;
  const Counterexample ce = theorem1_counterexample(opt);
  out << "pair = (" << ce.u << "," << ce.v << ")\n"
      << "theta = " << format_double(ce.theta) << '\n'
      << "phi = " << format_double(ce.phi) << '\n'
      << "phi_prime = " << format_double(ce.phi_prime) << '\n'
      << "delta = " << format_double(ce.delta) << '\n'
      << "pe_discrepancy = " << format_double(ce.pe_discrepancy) << '\n'
      << "reconstruction_error = " << format_double(ce.reconstruction_error) << '\n';
  m.results = {{"delta", ce.delta},
               {"phi", ce.phi},
               {"phi_prime", ce.phi_prime},
               {"pe_discrepancy", ce.pe_discrepancy},
               {"reconstruction_error", ce.reconstruction_error}};
  return kSuccess;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string budget = "default";
  std::uint64_t seed = 0;
  bool inject = false;
};

// Shortest round-trip form; the table is for reading, not re-parsing.
std::string short_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

int cmd_verify(const VerifyArgs& a, Manifest& m, std::ostream& out) {
  VerifyOptions opt;
  opt.budget = parse_budget(a.budget);
  opt.seed = a.seed;
  opt.inject_eigen_perturbation = a.inject;
  m.parameters = {{"budget", a.budget}, {"inject_eigen_perturbation", a.inject}};
  m.seed = a.seed;

  const VerifyReport report = run_verification(opt);
  std::size_t width = 9;
  for (const InvariantResult& r : report.results) width = std::max(width, r.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "invariant" << "  instances  "
      << std::setw(24) << "worst" << std::setw(10) << "tolerance" << "  status\n";
  json table = json::array();
  for (const InvariantResult& r : report.results) {
    out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(9)
        << r.instances << "  " << std::setw(24) << short_double(r.worst) << std::setw(10)
        << short_double(r.tolerance) << "  " << (r.passed ? "PASS" : "FAIL") << '\n';
    if (!r.passed) out << "    " << r.detail << '\n';
    table.push_back({{"name", r.name},
                     {"instances", r.instances},
                     {"worst", r.worst},
                     {"tolerance", r.tolerance},
                     {"passed", r.passed}});
  }
  out << (report.all_passed() ? "all invariants hold" : "verification FAILED") << " ("
      << std::fixed << std::setprecision(1) << report.seconds << " s)\n";
  out.unsetf(std::ios::fixed);
  m.results = {{"all_passed", report.all_passed()}, {"invariants", table}};
  return report.all_passed() ? kSuccess : kVerification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magnetic Laplacian positional encodings and walk profiles for directed graphs",
               "maglap"};
  app.set_version_flag("--version", MAGLAP_VERSION);
  app.require_subcommand(1);
  Manifest manifest;
  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest.path, "Write the run manifest here");
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random directed graph");
  gen_cmd->add_option("--kind", gen.kind, "er | dag")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Node count or range lo..hi")->capture_default_str();
  gen_cmd->add_option("--avg-degree", gen.avg_degree, "Expected out-degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_flag("--keep-all", gen.keep_all, "Skip largest-component extraction");
  gen_cmd->add_option("-o,--output", gen.output, "Edge-list path (default stdout)");
  add_manifest(gen_cmd);

  PeArgs pe;
  auto* pe_cmd = app.add_subcommand("pe", "Multi-q Magnetic-Laplacian or SVD positional encodings");
  pe_cmd->add_option("graph", pe.graph, "Edge-list file")->required();
  pe_cmd->add_option("--q", pe.qs, "Potential (repeatable)")->allow_extra_args(false);
  pe_cmd->add_option("--q-grid", pe.grid, "L:even | L:random");
  pe_cmd->add_option("--seed", pe.seed, "Seed for random grids")->capture_default_str();
  pe_cmd->add_option("--k", pe.k, "Eigenvectors per potential (default min(n, 32))");
  pe_cmd->add_option("--mode", pe.mode, "lap | adj | rw")->capture_default_str();
  pe_cmd->add_option("--format", pe.format, "csv | json")->capture_default_str();
  pe_cmd->add_flag("--svd", pe.svd, "SVD of the adjacency instead");
  pe_cmd->add_flag("--stable", pe.stable, "Gauge-invariant spectral-filter features");
  pe_cmd->add_option("-o,--output", pe.output);
  add_manifest(pe_cmd);

  WpArgs wp;
  auto* wp_cmd = app.add_subcommand("wp", "Bidirectional walk profile from a source node");
  wp_cmd->add_option("graph", wp.graph)->required();
  wp_cmd->add_option("--source", wp.source);
  wp_cmd->add_option("--L", wp.L, "Maximum walk length")->capture_default_str();
  wp_cmd->add_flag("--normalized", wp.normalized, "Random-walk probabilities");
  wp_cmd->add_option("--pair", wp.pair, "u,v: restrict to one target; report spd/lpd");
  wp_cmd->add_option("-o,--output", wp.output);
  add_manifest(wp_cmd);

  RecoverArgs rec;
  auto* rec_cmd = app.add_subcommand("recover", "Recover walk profiles from multi-q spectra");
  rec_cmd->add_option("graph", rec.graph)->required();
  rec_cmd->add_option("--L", rec.L)->capture_default_str();
  rec_cmd->add_option("--q", rec.qs, "Potential (repeatable)")->allow_extra_args(false);
  rec_cmd->add_option("--q-grid", rec.grid, "L:even | L:random (default: L:even)");
  rec_cmd->add_option("--seed", rec.seed)->capture_default_str();
  rec_cmd->add_option("--route", rec.route, "spectral | matpow")->capture_default_str();
  rec_cmd->add_flag("--normalized", rec.normalized);
  rec_cmd->add_flag("--no-augment", rec.no_augment, "Drop the conjugate rows");
  rec_cmd->add_option("--pair", rec.pairs, "u,v (repeatable; default all pairs)")
      ->allow_extra_args(false);
  rec_cmd->add_option("--report", rec.report, "JSON recovery report");
  rec_cmd->add_option("-o,--output", rec.output, "Recovered profiles as CSV");
  add_manifest(rec_cmd);

  CounterexampleArgs ce;
  auto* ce_cmd = app.add_subcommand("counterexample", "Single-q phase-shift construction");
  ce_cmd->add_option("--n", ce.n)->capture_default_str();
  ce_cmd->add_option("--q", ce.q)->capture_default_str();
  ce_cmd->add_option("--hub", ce.hub)->capture_default_str();
  ce_cmd->add_option("--theta", ce.theta, "Hub phase (default 4 pi q)");
  ce_cmd->add_flag("--spd", ce.spd, "Shortest-path variant");
  add_manifest(ce_cmd);

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the invariant suite");
  ver_cmd->add_option("--budget", ver.budget, "small | default | large")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed)->capture_default_str();
  ver_cmd->add_flag("--inject-eigen-perturbation", ver.inject, "Test hook: corrupt eigenvalues");
  add_manifest(ver_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    int code = kSuccess;
    if (gen_cmd->parsed()) {
      manifest.command = "gen";
      code = cmd_gen(gen, manifest, out);
    } else if (pe_cmd->parsed()) {
      manifest.command = "pe";
      code = cmd_pe(pe, manifest, out);
    } else if (wp_cmd->parsed()) {
      manifest.command = "wp";
      code = cmd_wp(wp, manifest, out, err);
    } else if (rec_cmd->parsed()) {
      manifest.command = "recover";
      code = cmd_recover(rec, manifest, out, err);
    } else if (ce_cmd->parsed()) {
      manifest.command = "counterexample";
      code = cmd_counterexample(ce, manifest, out);
    } else if (ver_cmd->parsed()) {
      manifest.command = "verify";
      code = cmd_verify(ver, manifest, out);
    }
    manifest.emit(err);
    return code;
  } catch (const std::exception& e) {
    int code = kParameter;
    std::string prefix = "error: ";
    if (dynamic_cast<const UsageError*>(&e)) {
      code = kUsage;
      prefix = "usage error: ";
    } else if (dynamic_cast<const ConvergenceError*>(&e) || dynamic_cast<const IllPosedError*>(&e)) {
      code = kNumerical;
      prefix = "numerical failure: ";
    } else if (!dynamic_cast<const Error*>(&e)) {
      throw;
    }
    err << prefix << e.what() << '\n';
    manifest.results["error"] = e.what();
    manifest.results["exit_code"] = code;
    try {
      manifest.emit(err);
    } catch (const Error&) {
    }
    return code;
  }
}

}  // namespace maglap::cli
