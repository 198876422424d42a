#include "maglap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "maglap/counterexample.hpp"
#include "maglap/digraph.hpp"
#include "maglap/errors.hpp"
#include "maglap/format.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/oracles.hpp"
#include "maglap/qgrid.hpp"
#include "maglap/recovery.hpp"
#include "maglap/spectral.hpp"
#include "maglap/spefunc.hpp"
#include "maglap/walk_profile.hpp"

namespace maglap {

std::string_view to_string(Budget budget) {
  switch (budget) {
    case Budget::small: return "small";
    case Budget::standard: return "default";
    case Budget::large: return "large";
  }
  return "default";
}

Budget parse_budget(std::string_view name) {
  if (name == "small") return Budget::small;
  if (name == "default") return Budget::standard;
  if (name == "large") return Budget::large;
  throw ParameterError("unknown budget '" + std::string(name) + "' (small|default|large)");
}

std::size_t instances_for(Budget budget) {
  switch (budget) {
    case Budget::small: return 8;
    case Budget::standard: return 30;
    case Budget::large: return 120;
  }
  return 30;
}

bool VerifyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const InvariantResult& r) { return r.passed; });
}

namespace {

class Check {
 public:
  Check(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void observe(double error, const std::string& where) {
    result_.worst = std::max(result_.worst, error);
    if (!(error <= result_.tolerance)) fail(where + ": error " + format_double(error));
  }

  void fail(const std::string& why) {
    if (result_.passed) result_.detail = why;
    result_.passed = false;
  }

  void count() { ++result_.instances; }

  InvariantResult finish() { return std::move(result_); }

 private:
  InvariantResult result_;
};

// Runs `body`, turning a library exception into a recorded failure so one bad
// instance does not abort the whole suite.
void guarded(Check& check, const std::string& where, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    check.fail(where + ": " + e.what());
  }
}

struct Sampler {
  std::mt19937_64 rng;

  DirectedGraph graph(std::size_t n_min, std::size_t n_max) {
    static constexpr double kDegrees[] = {1.0, 1.5, 2.0};
    GenSpec spec;
    spec.kind = rng() % 2 == 0 ? GraphKind::er_directed : GraphKind::dag;
    spec.n_min = n_min;
    spec.n_max = n_max;
    spec.avg_degree = kDegrees[rng() % 3];
    spec.seed = rng();
    return generate(spec);
  }

  DirectedGraph dag(std::size_t n_min, std::size_t n_max) {
    GenSpec spec;
    spec.kind = GraphKind::dag;
    spec.n_min = n_min;
    spec.n_max = n_max;
    spec.avg_degree = 1.5;
    spec.seed = rng();
    return generate(spec);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

std::string tag(std::size_t i) { return "instance " + std::to_string(i); }

DirectedGraph star(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t w = 1; w < n; ++w) edges.push_back({0, w, 1.0});
  return DirectedGraph(n, std::move(edges));
}

InvariantResult eigen_certificates(Sampler& s, std::size_t count, bool inject) {
  Check check("eigen_certificates", kEigenTolerance);
  const MatrixMode modes[] = {MatrixMode::adjacency, MatrixMode::laplacian};
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = s.graph(6, 12);
    const double q = s.uniform(0.0, 0.25);
    for (MatrixMode mode : modes) {
      guarded(check, tag(i), [&] {
        const MagneticMatrix m = magnetic_matrix(g, q, mode);
        EigenSystem e = eig_hermitian(m);
        if (inject) e.eigenvalues[0] += 1e-6;
        certify(e, m.data);
        check.observe(std::max(e.residual, e.unitarity_error), tag(i));
      });
    }
    check.count();
  }
  return check.finish();
}

InvariantResult walk_vs_enumeration(Sampler& s, std::size_t count) {
  Check check("walk_profile_equals_enumeration", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = s.graph(3, 8);
    const std::size_t L = 1 + s.rng() % 5;
    guarded(check, tag(i), [&] {
      for (std::size_t u = 0; u < g.node_count(); ++u) {
        const WalkProfile dp = walk_profile(g, u, L);
        const WalkProfile brute = enumerate_walks(g, u, L);
        for (std::size_t l = 0; l <= L; ++l)
          for (std::size_t k = 0; k <= l; ++k)
            for (std::size_t v = 0; v < g.node_count(); ++v)
              check.observe(std::abs(dp.at(l, k, v) - brute.at(l, k, v)), tag(i));
      }
    });
    check.count();
  }
  return check.finish();
}

InvariantResult path_distances(Sampler& s, std::size_t count) {
  Check check("spd_lpd_match_bfs_and_dag_dp", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const bool acyclic = i % 2 == 1;
    const DirectedGraph g = acyclic ? s.dag(4, 10) : s.graph(4, 10);
    guarded(check, tag(i), [&] {
      for (std::size_t u = 0; u < g.node_count(); ++u)
        for (std::size_t v = 0; v < g.node_count(); ++v) {
          if (shortest_path_distance(g, u, v) != oracle::bfs_distance(g, u, v))
            check.fail(tag(i) + ": spd mismatch for (" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
          if (acyclic && longest_path_distance(g, u, v) != oracle::dag_longest_path(g, u, v))
            check.fail(tag(i) + ": lpd mismatch for (" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
        }
    });
    check.count();
  }
  return check.finish();
}

InvariantResult phi21_identity(Sampler& s, std::size_t count) {
  Check check("phi_2_1_equals_AAt_plus_AtA", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = s.graph(4, 12);
    const RMatrix a = g.weight_matrix();
    const RMatrix at = transpose(a);
    const RMatrix aat = multiply(a, at);
    const RMatrix ata = multiply(at, a);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const WalkProfile wp = walk_profile(g, u, 2);
      for (std::size_t v = 0; v < g.node_count(); ++v)
        check.observe(std::abs(wp.at(2, 1, v) - (aat(u, v) + ata(u, v))), tag(i));
    }
    check.count();
  }
  return check.finish();
}

// Every pair of an antiparallel-free graph, checked against the DP.
void recover_all_pairs(Check& check, const DirectedGraph& g, const QGrid& grid, std::size_t L,
                       PowerRoute route, bool normalized, const std::string& where) {
  guarded(check, where, [&] {
    const FourierSystemBuilder builder(g, grid, L, route, normalized);
    const FourierSolver solver(builder.fourier());
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const WalkProfile truth = walk_profile(g, u, L, normalized);
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        const Recovery rec = recover_walk_profile(builder.system(u, v), solver);
        for (std::size_t l = 0; l <= L; ++l)
          for (std::size_t k = 0; k <= l; ++k)
            check.observe(std::abs(rec.at(l, k) - truth.at(l, k, v)), where);
      }
    }
  });
}

InvariantResult recovery(Sampler& s, std::size_t count, GridPolicy policy) {
  Check check(policy == GridPolicy::random ? "recovery_random_grid" : "recovery_even_grid", 1e-6);
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = without_antiparallel(s.graph(6, 12));
    const std::size_t L = 2 + 2 * (i % 4);
    const QGrid grid = make_qgrid(L, policy, s.rng());
    const PowerRoute route = i % 3 == 2 ? PowerRoute::matpow : PowerRoute::spectral;
    recover_all_pairs(check, g, grid, L, route, false, tag(i));
    check.count();
  }
  return check.finish();
}

InvariantResult normalized_recovery(Sampler& s, std::size_t count) {
  Check check("recovery_normalized", 1e-6);
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g =
        largest_weakly_connected_component(without_antiparallel(s.graph(6, 12))).graph;
    if (g.node_count() < 2) continue;
    const std::size_t L = 1 + i % 6;
    const QGrid grid = make_qgrid(L, GridPolicy::evenly_spaced);
    recover_all_pairs(check, g, grid, L, i % 2 ? PowerRoute::matpow : PowerRoute::spectral, true,
                      tag(i));
    check.count();
  }
  return check.finish();
}

InvariantResult single_q_ill_posed(Sampler& s, std::size_t count) {
  Check check("single_q_rank_deficient", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t L = 4 + i % 5;
    const QGrid grid = user_qgrid({s.uniform(0.0, 0.25)}, L);
    const FourierSolver solver(fourier_matrix(fourier_rows(grid, true).potentials, L));
    if (solver.rank() >= L + 1)
      check.fail(tag(i) + ": single-q system has full rank " + std::to_string(solver.rank()));
    bool refused = false;
    try {
      solver.solve(CMatrix(solver.required_rank(), L));
    } catch (const IllPosedError&) {
      refused = true;
    }
    if (!refused) check.fail(tag(i) + ": rank-deficient system was solved silently");
    check.count();
  }
  return check.finish();
}

InvariantResult fourier_conditioning(std::size_t count) {
  Check check("even_grid_condition_number_is_one", 1e-8);
  for (std::size_t i = 0; i < std::max<std::size_t>(count / 4, 5); ++i) {
    const std::size_t L = 2 * (i + 1);
    const QGrid grid = make_qgrid(L, GridPolicy::evenly_spaced);
    const FourierSolver solver(fourier_matrix(fourier_rows(grid, true).potentials, L));
    check.observe(std::abs(solver.condition_number() - 1.0), "L = " + std::to_string(L));
    check.count();
  }
  return check.finish();
}

InvariantResult spectral_powers(Sampler& s, std::size_t count) {
  // Relative to the largest entry of M^l, since adjacency powers grow.
  Check check("spectral_power_matches_dense_power", 1e-6);
  const MatrixMode modes[] = {MatrixMode::adjacency, MatrixMode::laplacian, MatrixMode::rw_adjacency};
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = largest_weakly_connected_component(s.graph(6, 12)).graph;
    if (g.node_count() < 2) continue;
    const double q = s.uniform(0.0, 0.25);
    const MatrixMode mode = modes[i % 3];
    guarded(check, tag(i), [&] {
      const MagneticMatrix m = magnetic_matrix(g, q, mode);
      const EigenSystem e = eig_hermitian(m);
      CMatrix power = CMatrix::identity(g.node_count());
      for (int l = 0; l <= 16; ++l) {
        if (l > 0) power = multiply(power, m.data);
        const double scale = std::max(1.0, max_abs(power));
        for (std::size_t u = 0; u < g.node_count(); ++u)
          for (std::size_t v = 0; v < g.node_count(); ++v)
            check.observe(std::abs(spectral_power_entry(e, u, v, l) - power(u, v)) / scale, tag(i));
      }
    });
    check.count();
  }
  return check.finish();
}

InvariantResult gauge_fixing(Sampler& s, std::size_t count) {
  Check check("gauge_fix_undoes_random_phases", 1e-8);
  // Sparse random graphs often have repeated eigenvalues (isolated nodes,
  // twin leaves), where phases alone do not pin the basis; redraw those.
  constexpr int kRedraws = 50;
  auto nondegenerate = [](const EigenSystem& e) {
    for (std::size_t k = 1; k < e.size(); ++k)
      if (e.eigenvalues[k] - e.eigenvalues[k - 1] < 1e-6) return false;
    return true;
  };
  for (std::size_t i = 0; i < count; ++i) {
    guarded(check, tag(i), [&] {
      for (int attempt = 0; attempt < kRedraws; ++attempt) {
        const DirectedGraph g = largest_weakly_connected_component(s.graph(6, 12)).graph;
        const EigenSystem e = eig_hermitian(magnetic_laplacian(g, s.uniform(0.01, 0.25)));
        if (!nondegenerate(e)) continue;
        const EigenSystem fixed = gauge_fix(e);
        const EigenSystem again = gauge_fix(apply_random_gauge(e, s.rng(), true));
        check.observe(max_abs_diff(fixed.vectors, again.vectors), tag(i));
        check.count();
        return;
      }
    });
  }
  return check.finish();
}

InvariantResult gauge_invariance(Sampler& s, std::size_t count) {
  Check check("spefunc_gauge_invariance", 1e-7);
  const FilterBank bank = FilterBank::standard();
  for (std::size_t i = 0; i < count; ++i) {
    // Every third instance is a star, whose spectrum has a large degenerate block.
    const DirectedGraph g = i % 3 == 0 ? star(5 + i % 7) : s.graph(6, 12);
    const MatrixMode mode = i % 2 ? MatrixMode::adjacency : MatrixMode::laplacian;
    guarded(check, tag(i), [&] {
      check.observe(gauge_invariance_check(magnetic_matrix(g, s.uniform(0.0, 0.25), mode), bank, 10,
                                           s.rng()),
                    tag(i));
    });
    check.count();
  }
  return check.finish();
}

InvariantResult q_continuity(Sampler& s, std::size_t count) {
  Check check("spefunc_q_continuity", 1e-6);
  const FilterBank bank = FilterBank::standard();
  std::vector<double> qs;
  for (double q = 0.05; q > 1e-8; q /= 2.0) qs.push_back(q);
  qs.push_back(qs.back() / 2.0);
  for (std::size_t i = 0; i < std::max<std::size_t>(count / 4, 3); ++i) {
    const DirectedGraph g = s.graph(6, 12);
    guarded(check, tag(i), [&] {
      const std::vector<double> dev = q_continuity_profile(g, bank, qs);
      for (std::size_t j = 1; j < dev.size(); ++j)
        if (dev[j] > dev[j - 1] + 1e-12)
          check.fail(tag(i) + ": deviation increased at q = " + format_double(qs[j]));
      check.observe(dev.back(), tag(i));
    });
    check.count();
  }
  return check.finish();
}

InvariantResult q0_reduction(Sampler& s, std::size_t count) {
  Check check("q0_equals_symmetrized_laplacian", 1e-10);
  for (std::size_t i = 0; i < count; ++i) {
    const DirectedGraph g = s.graph(6, 12);
    guarded(check, tag(i), [&] {
      const std::size_t n = g.node_count();
      const PEMatrix pe = multi_q_pe(g, user_qgrid({0.0}), n);
      double imag = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) imag = std::max(imag, std::abs(pe.values(r, c).imag()));
      check.observe(imag, tag(i) + " imaginary residue");
      const RMatrix sym = oracle::symmetrized_laplacian(g);
      check.observe(max_abs_diff(magnetic_laplacian(g, 0.0).data, to_complex(sym)),
                    tag(i) + " matrix");
      // PE columns reassemble the symmetrized Laplacian.
      EigenSystem from_pe;
      from_pe.eigenvalues = pe.eigenvalue_blocks[0];
      from_pe.vectors = pe.values;
      check.observe(max_abs_diff(reconstruct(from_pe), to_complex(sym)),
                    tag(i) + " reconstruction");
    });
    check.count();
  }
  return check.finish();
}

InvariantResult counterexample_construction() {
  Check check("counterexample_construction", 1e-8);
  for (std::size_t n : {5, 8, 12})
    for (double q : {0.1, 0.2, 0.3}) {
      const std::string where = "n = " + std::to_string(n) + ", q = " + format_double(q);
      guarded(check, where, [&] {
        const Counterexample ce = theorem1_counterexample(n, q);
        const double x = ce.theta / (2.0 * kTwoPi * q);
        check.observe(ce.pe_discrepancy, where + " PE discrepancy");
        check.observe(ce.reconstruction_error, where + " reconstruction");
        check.observe(std::abs(ce.delta - x * (1.0 + x)), where + " delta");
        const SpdCounterexample spd = spd_counterexample(n, q);
        if (!spd.differs()) check.fail(where + ": spd agrees");
        check.observe(spd.pe_discrepancy, where + " spd PE discrepancy");
      });
      check.count();
    }
  return check.finish();
}

InvariantResult io_and_generation(Sampler& s, std::size_t count) {
  Check check("edge_list_roundtrip_and_generation", 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec spec;
    spec.kind = i % 2 ? GraphKind::dag : GraphKind::er_directed;
    spec.n_min = 4;
    spec.n_max = 40;
    spec.seed = s.rng();
    const DirectedGraph g = generate(spec);
    if (!(generate(spec) == g)) check.fail(tag(i) + ": generation is not deterministic");
    if (spec.kind == GraphKind::dag && !is_acyclic(g)) check.fail(tag(i) + ": dag has a cycle");
    std::stringstream text;
    format_edge_list(g, text);
    if (!(parse_edge_list(text) == g)) check.fail(tag(i) + ": edge list does not round-trip");
    check.count();
  }
  return check.finish();
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t count = instances_for(options.budget);
  // Each invariant gets its own stream so adding one does not reshuffle the rest.
  std::mt19937_64 seeder(options.seed);
  auto sampler = [&] { return Sampler{std::mt19937_64(seeder())}; };

  VerifyReport report;
  {
    Sampler s = sampler();
    report.results.push_back(eigen_certificates(s, count, options.inject_eigen_perturbation));
  }
  {
    Sampler s = sampler();
    report.results.push_back(walk_vs_enumeration(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(path_distances(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(phi21_identity(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(recovery(s, count, GridPolicy::evenly_spaced));
  }
  {
    Sampler s = sampler();
    report.results.push_back(recovery(s, count, GridPolicy::random));
  }
  {
    Sampler s = sampler();
    report.results.push_back(normalized_recovery(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(single_q_ill_posed(s, count));
  }
  report.results.push_back(fourier_conditioning(count));
  {
    Sampler s = sampler();
    report.results.push_back(spectral_powers(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(gauge_fixing(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(gauge_invariance(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(q_continuity(s, count));
  }
  {
    Sampler s = sampler();
    report.results.push_back(q0_reduction(s, count));
  }
  report.results.push_back(counterexample_construction());
  {
    Sampler s = sampler();
    report.results.push_back(io_and_generation(s, count));
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace maglap
