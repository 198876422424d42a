// Acceptance run: one PASS/FAIL line per criterion at full size.
#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maglap/counterexample.hpp"
#include "maglap/digraph.hpp"
#include "maglap/errors.hpp"
#include "maglap/magnetic.hpp"
#include "maglap/oracles.hpp"
#include "maglap/qgrid.hpp"
#include "maglap/recovery.hpp"
#include "maglap/spectral.hpp"
#include "maglap/spefunc.hpp"
#include "maglap/walk_profile.hpp"
#include "test_graphs.hpp"

using namespace maglap;
using maglap::testing::random_graph;
using maglap::testing::to_eigen;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) ++failures;
  std::printf("%s C%d %s: %s (%.2fs)\n", o.passed ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Worst |recovered - DP| over all pairs and all (l, k).
double recovery_error(const DirectedGraph& g, const QGrid& grid, std::size_t L) {
  const FourierSystemBuilder builder(g, grid, L);
  const FourierSolver solver(builder.fourier());
  double worst = 0.0;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    const WalkProfile truth = walk_profile(g, u, L);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      const Recovery rec = recover_walk_profile(builder.system(u, v), solver);
      for (std::size_t l = 0; l <= L; ++l)
        for (std::size_t k = 0; k <= l; ++k)
          worst = std::max(worst, std::abs(rec.at(l, k) - truth.at(l, k, v)));
    }
  }
  return worst;
}

Outcome even_grid_recovery() {
  const std::size_t kLengths[] = {2, 4, 6, 8};
  double worst = 0.0;
  std::size_t graphs = 0;
  for (std::uint64_t s = 0; s < 120; ++s) {
    const DirectedGraph g = random_graph(1000 + s, 6, 12, true);
    const std::size_t L = kLengths[s % 4];
    worst = std::max(worst, recovery_error(g, make_qgrid(L, GridPolicy::evenly_spaced), L));
    ++graphs;
  }
  return {worst <= 1e-6, std::to_string(graphs) + " graphs, max error " + sci(worst)};
}

Outcome random_grid_recovery() {
  const std::size_t kLengths[] = {2, 4, 6, 8};
  double worst = 0.0;
  std::size_t runs = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const DirectedGraph g = random_graph(2000 + s, 6, 12, true);
    const std::size_t L = kLengths[s % 4];
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      worst = std::max(worst, recovery_error(g, make_qgrid(L, GridPolicy::random, seed), L));
      ++runs;
    }
  }
  return {worst <= 1e-6, std::to_string(runs) + " graph/seed runs, max error " + sci(worst)};
}

Outcome counterexample_delta() {
  Outcome o;
  std::ostringstream detail;
  double worst_delta_gap = 0.0;
  double worst_discrepancy = 0.0;
  double measured = 0.0;
  bool spd_differs = true;
  for (std::size_t n : {5, 8, 12})
    for (double q : {0.1, 0.2, 0.3}) {
      const Counterexample ce = theorem1_counterexample(n, q);
      measured = ce.delta;
      worst_delta_gap = std::max(worst_delta_gap, std::abs(ce.delta - (-0.5)));
      worst_discrepancy = std::max(worst_discrepancy, ce.pe_discrepancy);
      spd_differs = spd_differs && spd_counterexample(n, q).differs();
    }
  o.passed = worst_delta_gap <= 1e-8 && worst_discrepancy <= 1e-8 && spd_differs;
  detail << "delta measured " << sci(measured) << " (target -0.5, worst gap "
         << sci(worst_delta_gap) << "), pe discrepancy " << sci(worst_discrepancy)
         << ", spd differs " << (spd_differs ? "yes" : "no");
  o.detail = detail.str();
  return o;
}

Outcome single_q_ill_posed() {
  std::size_t cases = 0;
  for (std::size_t L = 4; L <= 10; ++L)
    for (double q : {0.0, 0.05, 0.1, 0.2}) {
      const FourierRows rows = fourier_rows(user_qgrid({q}, L), true);
      const FourierSolver solver(fourier_matrix(rows.potentials, L));
      if (solver.rank() >= L + 1)
        return {false, "rank " + std::to_string(solver.rank()) + " for L=" + std::to_string(L)};
      try {
        solver.solve(CMatrix(rows.potentials.size(), L));
        return {false, "solve accepted a rank-deficient system at L=" + std::to_string(L)};
      } catch (const IllPosedError&) {
      }
      ++cases;
    }
  return {true, std::to_string(cases) + " single-q systems rank deficient and rejected"};
}

Outcome walk_profile_oracles() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DirectedGraph g = random_graph(3000 + s, 3, 8);
    const std::size_t L = 1 + s % 5;
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const WalkProfile dp = walk_profile(g, u, L);
      const WalkProfile brute = enumerate_walks(g, u, L);
      for (std::size_t l = 0; l <= L; ++l)
        for (std::size_t k = 0; k <= l; ++k)
          for (std::size_t v = 0; v < g.node_count(); ++v)
            worst = std::max(worst, std::abs(dp.at(l, k, v) - brute.at(l, k, v)));
    }
  }
  std::size_t mismatches = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::mt19937_64 rng(4000 + s);
    GenSpec spec;
    spec.kind = s % 2 ? GraphKind::dag : GraphKind::er_directed;
    spec.n_min = 4;
    spec.n_max = 12;
    spec.avg_degree = 1.0 + 0.5 * static_cast<double>(rng() % 3);
    spec.seed = rng();
    const DirectedGraph g = generate(spec);
    for (std::size_t u = 0; u < g.node_count(); ++u)
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        if (shortest_path_distance(g, u, v) != oracle::bfs_distance(g, u, v)) ++mismatches;
        if (spec.kind == GraphKind::dag &&
            longest_path_distance(g, u, v) != oracle::dag_longest_path(g, u, v))
          ++mismatches;
      }
  }
  return {worst == 0.0 && mismatches == 0,
          "enumeration max diff " + sci(worst) + " on 100 graphs, " + std::to_string(mismatches) +
              " spd/lpd mismatches on 200 graphs"};
}

Outcome numerical_certificates() {
  double worst_cert = 0.0;
  double worst_cond = 0.0;
  double worst_power = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    // Largest component so every node has a degree for the random-walk form.
    const DirectedGraph g = largest_weakly_connected_component(random_graph(5000 + s, 6, 20)).graph;
    for (double q : {0.0, 0.1, 0.2}) {
      for (MatrixMode mode : {MatrixMode::adjacency, MatrixMode::laplacian}) {
        const EigenSystem e = eig_hermitian(magnetic_matrix(g, q, mode));
        worst_cert = std::max({worst_cert, e.residual, e.unitarity_error});
      }
      // S_q = D^{-1/2} A_q D^{-1/2} has spectrum in [-1, 1], so high powers stay bounded.
      const MagneticMatrix s_q = rw_magnetic_adjacency(g, q).matrix;
      const EigenSystem e = eig_hermitian(s_q);
      const Eigen::MatrixXcd dense = to_eigen(s_q.data);
      Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(dense.rows(), dense.cols());
      for (int ell = 0; ell <= 16; ++ell) {
        for (Eigen::Index i = 0; i < dense.rows(); ++i)
          for (Eigen::Index j = 0; j < dense.cols(); ++j)
            worst_power = std::max(
                worst_power, std::abs(spectral_power_entry(e, static_cast<std::size_t>(i),
                                                           static_cast<std::size_t>(j), ell) -
                                      power(i, j)));
        power = power * dense;
      }
    }
  }
  // The literal grid j/(2(L+1)) together with its mirrors 1/2 - q covers every
  // (L+1)-th root of unity once, so F is a scaled DFT matrix.
  double odd_pulled_in = 0.0;
  for (std::size_t L = 1; L <= 16; ++L) {
    std::vector<double> potentials;
    auto add = [&](double p) {
      const cplx phase = std::polar(1.0, 2.0 * kTwoPi * p);
      for (double other : potentials)
        if (std::abs(std::polar(1.0, 2.0 * kTwoPi * other) - phase) < 1e-12) return;
      potentials.push_back(p);
    };
    const std::size_t count = required_potentials(L);
    for (std::size_t j = 0; j < count; ++j) add(static_cast<double>(j) / (2.0 * (L + 1.0)));
    for (std::size_t j = 0; j < count; ++j) add(0.5 - static_cast<double>(j) / (2.0 * (L + 1.0)));
    worst_cond = std::max(worst_cond,
                          std::abs(FourierSolver(fourier_matrix(potentials, L)).condition_number() - 1.0));

    const FourierSolver built(
        fourier_matrix(fourier_rows(make_qgrid(L, GridPolicy::evenly_spaced), true).potentials, L));
    if (L % 2 == 0)
      worst_cond = std::max(worst_cond, std::abs(built.condition_number() - 1.0));
    else
      odd_pulled_in = std::max(odd_pulled_in, built.condition_number());
  }
  return {worst_cert <= 1e-8 && worst_cond <= 1e-8 && worst_power <= 1e-6,
          "certificates " + sci(worst_cert) + ", |cond-1| " + sci(worst_cond) +
              ", power entries " + sci(worst_power) +
              " (odd-L grids with the 1/4 endpoint pulled in reach cond " + sci(odd_pulled_in) +
              ")"};
}

DirectedGraph star(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t w = 1; w < n; ++w) edges.push_back({0, w, 1.0});
  return DirectedGraph(n, std::move(edges));
}

Outcome spefunc_stability() {
  const FilterBank bank = FilterBank::standard();
  double worst_gauge = 0.0;
  std::size_t degenerate = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    // Every fourth graph is a star, whose spectrum has a large repeated eigenvalue.
    const DirectedGraph g = s % 4 == 0 ? star(5 + s / 4) : random_graph(6000 + s, 6, 16);
    const MagneticMatrix m = magnetic_laplacian(g, 0.1);
    const EigenSystem e = eig_hermitian(m);
    for (const auto& [b, end] : eigenvalue_groups(e, kDegeneracyTolerance))
      if (end - b > 1) {
        ++degenerate;
        break;
      }
    worst_gauge = std::max(worst_gauge, gauge_invariance_check(m, bank, 10, 7000 + s));
  }

  bool monotone = true;
  double final_dev = 0.0;
  std::vector<double> qs;
  for (double q = 0.1; q > 1e-8; q /= 2) qs.push_back(q);
  qs.push_back(qs.back() / 2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const std::vector<double> dev =
        q_continuity_profile(random_graph(8000 + s, 6, 12), bank, qs);
    for (std::size_t i = 1; i < dev.size(); ++i)
      if (dev[i] > dev[i - 1] + 1e-12) monotone = false;
    final_dev = std::max(final_dev, dev.back());
  }
  return {worst_gauge <= 1e-7 && monotone && final_dev <= 1e-6 && degenerate > 0,
          "gauge deviation " + sci(worst_gauge) + " (" + std::to_string(degenerate) +
              " degenerate graphs), q->0 " + (monotone ? "monotone" : "NOT monotone") +
              ", final " + sci(final_dev)};
}

Outcome q0_consistency() {
  double worst_recon = 0.0;
  double worst_imag = 0.0;
  double worst_phi = 0.0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const DirectedGraph g = random_graph(9000 + s, 6, 16);
    const std::size_t n = g.node_count();
    const PEMatrix pe = multi_q_pe(g, user_qgrid({0.0}), n);
    const RMatrix ref = oracle::symmetrized_laplacian(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        worst_imag = std::max(worst_imag, std::abs(pe.at(i, 0, j).imag()));
        cplx sum = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          sum += pe.eigenvalue_blocks[0][k] * pe.at(i, 0, k) * std::conj(pe.at(j, 0, k));
        worst_recon = std::max(worst_recon, std::abs(sum - ref(i, j)));
      }

    const Eigen::MatrixXd a = to_eigen(g.weight_matrix());
    const Eigen::MatrixXd expected = a * a.transpose() + a.transpose() * a;
    for (std::size_t u = 0; u < n; ++u) {
      const WalkProfile wp = walk_profile(g, u, 2);
      for (std::size_t v = 0; v < n; ++v)
        worst_phi = std::max(worst_phi, std::abs(wp.at(2, 1, v) -
                                                 expected(static_cast<Eigen::Index>(u),
                                                          static_cast<Eigen::Index>(v))));
    }
  }
  return {worst_recon <= 1e-8 && worst_imag <= 1e-10 && worst_phi == 0.0,
          "reconstruction " + sci(worst_recon) + ", imag " + sci(worst_imag) +
              ", Phi(2,1) identity diff " + sci(worst_phi)};
}

}  // namespace

int main() {
  report(1, "walk profiles from even-grid PEs", even_grid_recovery);
  report(2, "walk profiles from random grids", random_grid_recovery);
  report(3, "hub counterexample delta = -0.5", counterexample_delta);
  report(4, "single potential is ill-posed", single_q_ill_posed);
  report(5, "walk profile and distance oracles", walk_profile_oracles);
  report(6, "numerical certificates", numerical_certificates);
  report(7, "spectral features are gauge invariant and continuous in q", spefunc_stability);
  report(8, "q = 0 consistency", q0_consistency);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
