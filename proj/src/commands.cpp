#include "qsl/commands.hpp"

#include "qsl/bounds.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/reference.hpp"
#include "qsl/run_config.hpp"
#include "qsl/states.hpp"
#include "qsl/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

namespace qsl::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

/// Bit-exact decimal serialization: 17 significant digits round-trip a
/// double exactly.
std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Family parse_family(const std::string& name) {
  if (name == "W" || name == "w") return Family::W;
  if (name == "GHZ" || name == "ghz") return Family::Ghz;
  throw std::invalid_argument("family must be W or GHZ, got '" + name + "'");
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "complete") return GraphKind::Complete;
  if (name == "chain") return GraphKind::Chain;
  throw std::invalid_argument("graph must be complete or chain, got '" + name + "'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CombinationNotInCatalog& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int cmd_sweep(const SweepOptions& options) {
  return run_guarded([&]() {
    const auto started_at = iso_now();
    const auto t0 = std::chrono::steady_clock::now();

    RunConfig rc = parse_run_config_file(options.config_path);
    if (options.seed) rc.opt.seed = *options.seed;
    if (options.restarts) rc.opt.restarts = *options.restarts;
    if (options.threads) rc.opt.threads = *options.threads;
    if (options.tolerance) rc.opt.step_tolerance = *options.tolerance;
    rc.opt.validate();

    if (options.progress) {
      rc.opt.on_progress = [](const ProgressEvent& ev) {
        json line = {{"t", ev.time},
                     {"fidelity", ev.best_fidelity},
                     {"evaluations", ev.evaluations},
                     {"point", ev.point_index},
                     {"grid_points", ev.point_count}};
        std::cerr << line.dump() << "\n";
      };
    }

    const ParameterSpace space(rc.opt.graph, rc.opt.symmetry,
                               rc.opt.symmetric_couplings);
    const FidelityCurve curve = sweep(rc.opt);

    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);
    const std::string curve_path = (fs::path(options.out_dir) / "curve.tsv").string();
    const std::string summary_path =
        (fs::path(options.out_dir) / "summary.json").string();
    const std::string manifest_path =
        (fs::path(options.out_dir) / "manifest.json").string();

    {
      auto out = open_output(curve_path);
      out << "time\tfidelity\tevaluations";
      for (const auto& name : space.parameter_names()) out << "\t" << name;
      out << "\n";
      for (std::size_t i = 0; i < curve.size(); ++i) {
        out << g17(curve.times[i]) << "\t" << g17(curve.fidelities[i]) << "\t"
            << curve.evaluations[i];
        const auto& p = curve.best_params[i];
        for (Eigen::Index k = 0; k < p.size(); ++k) out << "\t" << g17(p(k));
        out << "\n";
      }
    }

    double max_fidelity = 0.0, t_at_max = 0.0;
    long total_evaluations = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      total_evaluations += curve.evaluations[i];
      if (curve.fidelities[i] > max_fidelity) {
        max_fidelity = curve.fidelities[i];
        t_at_max = curve.times[i];
      }
    }
    const auto t_min = minimal_time(curve, rc.opt.epsilon);
    const auto t_thresh = threshold_time(curve, rc.threshold);

    json summary = {
        {"target", target_name(rc.opt.target)},
        {"n_sites", rc.opt.n_sites},
        {"parameter_count", space.dim()},
        {"grid_points", curve.size()},
        {"max_fidelity", max_fidelity},
        {"t_at_max", t_at_max},
        {"epsilon", rc.opt.epsilon},
        {"minimal_time", t_min ? json(*t_min) : json(nullptr)},
        {"threshold", rc.threshold},
        {"threshold_time", t_thresh ? json(*t_thresh) : json(nullptr)},
        {"total_evaluations", total_evaluations},
    };
    open_output(summary_path) << summary.dump(2) << "\n";

    json config_echo = json::array();
    for (const auto& [k, v] : rc.entries) config_echo.push_back({{k, v}});
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    json manifest = {
        {"tool", "qsl"},
        {"version", kVersion},
        {"command", "sweep"},
        {"config_path", options.config_path},
        {"config", config_echo},
        {"seed", rc.opt.seed},
        {"restarts", rc.opt.restarts},
        {"threads", rc.opt.threads},
        {"method",
         rc.opt.method == LocalMethod::NelderMead ? "nelder_mead" : "quasi_newton"},
        {"parameter_count", space.dim()},
        {"parameter_names", space.parameter_names()},
        {"started_at", started_at},
        {"finished_at", iso_now()},
        {"wall_seconds", elapsed},
        {"outputs", {{"curve", curve_path}, {"summary", summary_path}}},
    };
    open_output(manifest_path) << manifest.dump(2) << "\n";

    std::cout << "sweep: " << curve.size() << " grid points, max fidelity "
              << g17(max_fidelity) << " at t = " << g17(t_at_max) << "\n";
    if (t_min)
      std::cout << "minimal time (fidelity >= 1 - " << rc.opt.epsilon
                << "): t = " << g17(*t_min) << "\n";
    else
      std::cout << "minimal time: not reached on this grid\n";
    if (t_thresh)
      std::cout << "threshold " << rc.threshold << " first crossed at t = "
                << g17(*t_thresh) << "\n";
    return kExitOk;
  });
}

int cmd_verify(const std::string& family, int n_sites, const std::string& graph) {
  return run_guarded([&]() {
    const ReferenceEntry entry =
        reference_hamiltonian(parse_family(family), n_sites, parse_graph_kind(graph));
    const VerifyReport report = verify_entry(entry);

    std::printf("entry          %s\n", entry.label.c_str());
    std::printf("expression     %s\n", entry.expression.c_str());
    std::printf("claimed time   %s (%s)\n", g17(entry.claimed_time).c_str(),
                entry.exact ? "exact" : "approximate");
    std::printf("printed spectrum range  [%s, %s]\n",
                g17(report.spectrum_min).c_str(), g17(report.spectrum_max).c_str());
    std::printf("prefactor normalized    %s\n",
                report.prefactor_normalized ? "yes" : "no (re-normalized for checks)");
    std::printf("fidelity at claimed t   %.6f\n", report.fidelity_at_claimed_time);
    if (!entry.exact)
      std::printf("window best fidelity    %.6f at t = %s\n",
                  report.best_fidelity_in_window,
                  g17(report.best_time_in_window).c_str());
    std::printf("delta H in |0...0>      %s\n",
                g17(report.delta_h_zero_state).c_str());
    std::printf("distinct levels         %d (%d occupied by |0...0>)\n",
                report.distinct_levels, report.active_levels);
    std::printf("claim                   %s\n", report.claim_met ? "PASS" : "FAIL");
    return report.claim_met ? kExitOk : kExitClaimFailed;
  });
}

int cmd_bound(const std::string& target, int n_sites) {
  return run_guarded([&]() {
    double overlap = 0.0;
    std::string name = target;
    if (target == "ghz") {
      overlap = 1.0 / std::sqrt(2.0);
    } else if (target == "w") {
      overlap = 0.0;
    } else if (target == "ame52") {
      if (n_sites != 5) throw std::invalid_argument("ame52 is a 5-qubit state");
      overlap = 1.0 / std::sqrt(8.0);
    } else if (target.rfind("dicke:", 0) == 0) {
      const int k = std::stoi(target.substr(6));
      if (k < 0 || k > n_sites) throw std::invalid_argument("dicke k out of range");
      overlap = k == 0 ? 1.0 : 0.0;
    } else {
      throw std::invalid_argument("target must be ghz | w | dicke:<k> | ame52");
    }

    // Maximal energy standard deviation of a unit-bandwidth Hamiltonian.
    const double delta_h = 0.5;
    std::printf("target                    %s, N = %d\n", name.c_str(), n_sites);
    std::printf("overlap |<target|0...0>|  %s\n", g17(overlap).c_str());
    std::printf("MT bound (dH = 1/2)       %s\n",
                g17(mt_bound(overlap, delta_h)).c_str());
    if (target == "ghz") {
      std::printf("two-body minimal time     %s  (pi ceil(N/2)^2 / 2)\n",
                  g17(ghz_two_body_time(n_sites)).c_str());
      std::printf("sequential circuit time   %s  (N^2 pi)\n",
                  g17(sequential_ghz_time(n_sites)).c_str());
    }
    return kExitOk;
  });
}

int cmd_components(const SeriesOptions& options) {
  return run_guarded([&]() {
    if (!(options.dt > 0.0) || !(options.t_end >= options.t_start))
      throw std::invalid_argument("invalid time range");
    const ReferenceEntry entry = reference_hamiltonian(
        parse_family(options.family), options.n_sites,
        parse_graph_kind(options.graph));
    const Spectrum normalized = normalize_bandwidth(eigendecompose(entry.hamiltonian));
    const Vector psi0 = zero_state(options.n_sites);
    const Vector target = entry.family == Family::W ? w_state(options.n_sites)
                                                    : ghz(options.n_sites);
    const std::vector<Vector> companions = {zero_state(options.n_sites),
                                            ghz(options.n_sites),
                                            w_state(options.n_sites)};

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!options.out_path.empty()) {
      file = open_output(options.out_path);
      out = &file;
    }
    *out << "time\tfidelity_target\tfidelity_zero\tfidelity_ghz\tfidelity_w\n";
    const long steps =
        std::lround(std::floor((options.t_end - options.t_start) / options.dt + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      const double t = options.t_start + static_cast<double>(k) * options.dt;
      const Vector psi = evolve(normalized, t, psi0);
      *out << g17(t) << "\t" << g17(fidelity(target, psi));
      for (const auto& c : companions) *out << "\t" << g17(fidelity(c, psi));
      *out << "\n";
    }
    return kExitOk;
  });
}

int cmd_tradeoff(const TradeoffOptions& options) {
  return run_guarded([&]() {
    if (!(options.dt > 0.0) || !(options.t_end >= options.t_start) ||
        !(options.t_start > 0.0))
      throw std::invalid_argument("invalid time range");
    double t_min = 0.0;
    if (options.t_min) {
      t_min = *options.t_min;
    } else if (parse_family(options.family) == Family::Ghz) {
      t_min = ghz_two_body_time(options.n_sites);
    } else {
      t_min = reference_hamiltonian(Family::W, options.n_sites).claimed_time;
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!options.out_path.empty()) {
      file = open_output(options.out_path);
      out = &file;
    }
    *out << "time\tenergy_range\n";
    const long steps =
        std::lround(std::floor((options.t_end - options.t_start) / options.dt + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      const double t = options.t_start + static_cast<double>(k) * options.dt;
      *out << g17(t) << "\t" << g17(energy_for_deadline(t_min, t)) << "\n";
    }
    return kExitOk;
  });
}

int cmd_catalog_dump(const std::string& out_path) {
  return run_guarded([&]() {
    json entries = json::array();
    for (const auto& entry : reference_catalog()) {
      const Spectrum s = eigendecompose(entry.hamiltonian);
      json real = json::array(), imag = json::array();
      for (Eigen::Index i = 0; i < entry.hamiltonian.rows(); ++i) {
        json row_r = json::array(), row_i = json::array();
        for (Eigen::Index j = 0; j < entry.hamiltonian.cols(); ++j) {
          row_r.push_back(entry.hamiltonian(i, j).real());
          row_i.push_back(entry.hamiltonian(i, j).imag());
        }
        real.push_back(row_r);
        imag.push_back(row_i);
      }
      std::vector<double> eigenvalues(s.eigenvalues.data(),
                                      s.eigenvalues.data() + s.eigenvalues.size());
      entries.push_back({{"label", entry.label},
                         {"family", family_name(entry.family)},
                         {"n_sites", entry.n_sites},
                         {"graph", graph_kind_name(entry.graph)},
                         {"claimed_time", entry.claimed_time},
                         {"exact", entry.exact},
                         {"expression", entry.expression},
                         {"eigenvalues", eigenvalues},
                         {"matrix_real", real},
                         {"matrix_imag", imag}});
    }
    json doc = {{"tool", "qsl"}, {"version", kVersion}, {"entries", entries}};
    if (out_path.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      open_output(out_path) << doc.dump(2) << "\n";
      std::cout << "catalog written to " << out_path << "\n";
    }
    return kExitOk;
  });
}

}  // namespace qsl::cli
