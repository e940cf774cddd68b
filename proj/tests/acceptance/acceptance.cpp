// Acceptance suite: one pass/fail line per pinned criterion. Exit status is
// nonzero when a gated check fails. The slow reproduction targets live in
// acceptance_slow.

#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/operators.hpp"
#include "qsl/optimizer.hpp"
#include "qsl/reference.hpp"
#include "qsl/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

int g_passed = 0;
int g_failed = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::string dots(52 > name.size() ? 52 - name.size() : 1, '.');
  std::printf("%s %s %s%s%s\n", name.c_str(), dots.c_str(), ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  (ok ? g_passed : g_failed) += 1;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// --- criterion 1: reference catalog times -------------------------------

void criterion1() {
  struct Probe { Family family; int n; GraphKind graph; };
  const std::vector<Probe> exact = {
      {Family::W, 3, GraphKind::Complete},  {Family::W, 4, GraphKind::Complete},
      {Family::W, 5, GraphKind::Complete},  {Family::Ghz, 3, GraphKind::Complete},
      {Family::Ghz, 4, GraphKind::Complete}, {Family::Ghz, 5, GraphKind::Complete},
      {Family::Ghz, 6, GraphKind::Complete}, {Family::Ghz, 7, GraphKind::Complete},
      {Family::Ghz, 3, GraphKind::Chain}};
  double worst = 1.0;
  std::string worst_label;
  bool ok = true;
  for (const auto& probe : exact) {
    const auto entry = reference_hamiltonian(probe.family, probe.n, probe.graph);
    const auto rep = verify_entry(entry);
    if (rep.fidelity_at_claimed_time < worst) {
      worst = rep.fidelity_at_claimed_time;
      worst_label = entry.label;
    }
    ok = ok && rep.fidelity_at_claimed_time >= 1.0 - 1e-6;
  }
  report("[1] exact reference times (fidelity >= 1 - 1e-6)", ok,
         "worst " + fmt(worst) + " at " + worst_label);

  bool ok_window = true;
  double worst_window = 1.0;
  for (int n : {6, 7}) {
    const auto rep = verify_entry(reference_hamiltonian(Family::W, n));
    worst_window = std::min(worst_window, rep.best_fidelity_in_window);
    ok_window = ok_window && rep.best_fidelity_in_window >= 1.0 - 1e-4;
  }
  report("[1] approximate W times (window max >= 1 - 1e-4)", ok_window,
         "worst " + fmt(worst_window));
}

// --- criterion 2: analytic spectra --------------------------------------

void criterion2() {
  std::mt19937_64 rng(1001);
  const auto graph = InteractionGraph::complete(3);
  const auto sym = SymmetryClass::full_permutation();

  auto k3 = [&](const Eigen::Matrix3d& h) {
    ParameterVector pv;
    pv.couplings.push_back(h);
    pv.fields.emplace_back(0.0, 0.0, 0.0);
    return assemble(pv, graph, sym);
  };
  auto random_symmetric = [&]() {
    Eigen::Matrix3d h;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) h(a, b) = h(b, a) = uniform(rng, -1.0, 1.0);
    return h;
  };

  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Matrix3d h = random_symmetric();
    const auto closed = symmetric3_spectrum(h);
    const Spectrum numeric = eigendecompose(k3(h));
    for (int k = 0; k < 8; ++k)
      worst = std::max(worst, std::abs(closed[static_cast<std::size_t>(k)] -
                                       numeric.eigenvalues(k)));
  }
  report("[2] symmetric3_spectrum vs eigensolver (500)", worst <= 1e-9,
         "max deviation " + fmt(worst));

  bool two_ok = true;
  int checked = 0;
  while (checked < 500) {
    Eigen::Matrix3d h = random_symmetric();
    if (std::abs(h(1, 1) + h(2, 2)) < 0.05) continue;
    const auto c = two_eigenvalue_hxx(h(1, 1), h(2, 2), h(0, 1), h(1, 2), h(0, 2));
    h(0, 0) = c.h_xx;
    const Spectrum s = eigendecompose(k3(h));
    const double tol = 1e-9 * std::max(1.0, s.bandwidth());
    two_ok = two_ok && count_distinct_levels(s.eigenvalues, tol) == 2;
    ++checked;
  }
  report("[2] two_eigenvalue_hxx collapses to 2 levels (500)", two_ok);

  double worst3 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Vector3d h(uniform(rng, -1, 1), uniform(rng, -1, 1),
                            uniform(rng, -1, 1));
    const Spectrum s = eigendecompose(three_body_hamiltonian(h));
    const double e = h.norm();
    for (int k = 0; k < 4; ++k)
      worst3 = std::max(worst3, std::abs(s.eigenvalues(k) + e));
    for (int k = 4; k < 8; ++k)
      worst3 = std::max(worst3, std::abs(s.eigenvalues(k) - e));
  }
  report("[2] three-body spectrum closed form (100)", worst3 <= 1e-10,
         "max deviation " + fmt(worst3));
}

// --- criterion 3: energy spread claims -----------------------------------

void criterion3() {
  const auto w3 = verify_entry(reference_hamiltonian(Family::W, 3));
  report("[3] W3 delta H = 0.5 +- 1e-9",
         std::abs(w3.delta_h_zero_state - 0.5) <= 1e-9,
         "measured " + fmt(w3.delta_h_zero_state));

  const auto ghz3 = verify_entry(reference_hamiltonian(Family::Ghz, 3));
  // Pinned at 0.125. The catalog operator measurably gives sqrt(6)/8
  // (hand-checkable from its Pauli expansion: <H> = 3, <H^2> = 33 before
  // the 1/16 normalization) while meeting its claimed arrival time, so this
  // check documents the discrepancy rather than hiding it; see README.
  report("[3] GHZ3 delta H = 0.125 +- 1e-9",
         std::abs(ghz3.delta_h_zero_state - 0.125) <= 1e-9,
         "measured " + fmt(ghz3.delta_h_zero_state) + " = sqrt(6)/8");
  report("[3] GHZ3 at least 5 distinct levels (gap 1e-8)",
         ghz3.distinct_levels >= 5,
         "measured " + std::to_string(ghz3.distinct_levels));
}

// --- criterion 4: MT bound suite -----------------------------------------

void criterion4() {
  std::mt19937_64 rng(1002);
  bool ok = true;
  double worst_gap = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = 2 << (trial % 4);  // 2..16
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j)
        a(i, j) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    Spectrum s;
    try {
      s = normalize_bandwidth(eigendecompose(Matrix((a + a.adjoint()) / 2.0)));
    } catch (const ZeroBandwidthError&) {
      continue;
    }
    Vector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      psi(i) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    psi.normalize();
    const double t = uniform(rng, 0.0, 15.0);
    const double dh = energy_stddev(s, psi);
    const double angle =
        std::acos(std::min(1.0, overlap_abs(psi, evolve(s, t, psi))));
    const double slack = t * dh + 1e-8 - angle;
    worst_gap = worst_gap < 0 ? slack : std::min(worst_gap, slack);
    ok = ok && slack >= 0.0;
  }
  report("[4] MT inequality on 1000 random evolutions", ok,
         "min slack " + fmt(worst_gap));

  const double ghz_mt = mt_bound(1.0 / std::sqrt(2.0), 0.5);
  const double w_mt = mt_bound(0.0, 0.5);
  const double ame_mt = mt_bound(1.0 / std::sqrt(8.0), 0.5);
  const bool table_ok = std::abs(ghz_mt - kPi / 2) <= 1e-12 &&
                        std::abs(w_mt - kPi) <= 1e-12 &&
                        std::abs(ame_mt - 2.42) <= 0.01;
  report("[4] MT bounds: GHZ pi/2, W pi, AME ~2.42", table_ok,
         "AME " + fmt(ame_mt));
}

// --- criterion 5: small-N optimization -----------------------------------

void criterion5() {
  OptimizeConfig cfg;
  cfg.target = {TargetKind::W, 1};
  cfg.n_sites = 3;
  cfg.graph = InteractionGraph::complete(3);
  cfg.symmetry = SymmetryClass::full_permutation();
  cfg.grid = {{0.0, 3.5, 0.05}};
  cfg.seed = 20240501;
  const double dt = 0.05;

  const FidelityCurve w_curve = sweep(cfg);
  const auto w_tmin = minimal_time(w_curve, 1e-4);
  const bool w_ok = w_tmin && std::abs(*w_tmin - kPi) <= dt + 1e-9;
  report("[5] W3 sweep: t_min = pi +- dt at fidelity >= 1 - 1e-4", w_ok,
         w_tmin ? "t_min " + fmt(*w_tmin) : "never reached 1 - 1e-4");

  cfg.target = {TargetKind::Ghz, 1};
  cfg.grid = {{0.0, 6.6, 0.05}};
  const FidelityCurve g_curve = sweep(cfg);
  const auto g_tmin = minimal_time(g_curve, 1e-4);
  const bool g_ok = g_tmin && std::abs(*g_tmin - 2.0 * kPi) <= dt + 1e-9;
  report("[5] GHZ3 sweep: t_min = 2 pi +- dt", g_ok,
         g_tmin ? "t_min " + fmt(*g_tmin) : "never reached 1 - 1e-4");

  const auto at_pi = maximize_at_time(kPi, cfg);
  report("[5] GHZ3 max fidelity at t = pi stays below 0.999",
         at_pi.fidelity < 0.999, "measured " + fmt(at_pi.fidelity));
}

// --- criterion 6: pairing law --------------------------------------------

void criterion6() {
  const double expected[] = {2 * kPi, 2 * kPi, 4.5 * kPi, 4.5 * kPi, 8 * kPi};
  bool ok = true;
  for (int n = 3; n <= 7; ++n)
    ok = ok && ghz_two_body_time(n) == expected[n - 3];
  ok = ok && ghz_two_body_time(3) == ghz_two_body_time(4) &&
       ghz_two_body_time(5) == ghz_two_body_time(6);
  report("[6] GHZ two-body times match and pair up (N = 3..7)", ok);
}

// --- criterion 7: symmetry ceiling for AME under full permutation --------

void criterion7() {
  OptimizeConfig cfg;
  cfg.target = {TargetKind::Ame52, 1};
  cfg.n_sites = 5;
  cfg.graph = InteractionGraph::complete(5);
  cfg.symmetry = SymmetryClass::full_permutation();
  cfg.grid = {{0.0, 30.0, 0.5}};
  cfg.allow_wide_steps = true;
  cfg.restarts = 48;
  cfg.refine = false;
  cfg.seed = 7;

  const FidelityCurve curve = sweep(cfg);
  const double peak = *std::max_element(curve.fidelities.begin(),
                                        curve.fidelities.end());

  // Exact ceiling for any fully symmetric evolution: the target's weight
  // onto the permutation-symmetric (Dicke) subspace, which is 1/4. Pinned
  // at 0.15, the check fails whenever the optimizer is strong enough to
  // approach the true ceiling; see README.
  double ceiling = 0.0;
  const Vector target = ame52();
  for (int k = 0; k <= 5; ++k) ceiling += fidelity(dicke(5, k), target);
  report("[7] fully symmetric AME sweep stays below 0.15", peak <= 0.15,
         "peak " + fmt(peak) + ", exact symmetric ceiling " + fmt(ceiling));
}

// --- criterion 9: determinism --------------------------------------------

std::string curve_table(const FidelityCurve& curve) {
  std::ostringstream out;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    char line[128];
    std::snprintf(line, sizeof(line), "%.17g\t%.17g\t%ld\n", curve.times[i],
                  curve.fidelities[i], curve.evaluations[i]);
    out << line;
    for (Eigen::Index k = 0; k < curve.best_params[i].size(); ++k) {
      std::snprintf(line, sizeof(line), "%.17g\n", curve.best_params[i](k));
      out << line;
    }
  }
  return out.str();
}

void criterion9() {
  OptimizeConfig cfg;
  cfg.target = {TargetKind::W, 1};
  cfg.n_sites = 3;
  cfg.graph = InteractionGraph::complete(3);
  cfg.symmetry = SymmetryClass::full_permutation();
  cfg.grid = {{2.9, 3.3, 0.1}};
  cfg.restarts = 12;
  cfg.seed = 555;
  cfg.threads = 2;

  const std::string a = curve_table(sweep(cfg));
  const std::string b = curve_table(sweep(cfg));
  cfg.threads = 1;
  const std::string c = curve_table(sweep(cfg));
  report("[9] identical seed and config give byte-identical tables",
         a == b && a == c);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion9();
  std::printf("\nacceptance: %d passed, %d failed", g_passed, g_failed);
  std::printf(" (slow reproduction targets: run qsl_acceptance_slow)\n");
  return g_failed == 0 ? 0 : 1;
}
