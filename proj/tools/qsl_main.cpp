#include "qsl/commands.hpp"
#include "qsl/run_config.hpp"
#include "qsl/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{
      "Minimal-time entangled state generation with two-body Hamiltonians: "
      "fidelity sweeps, reference operator checks and analytic bounds."};
  app.set_version_flag("--version", qsl::kVersion);
  app.require_subcommand(1);

  // sweep
  qsl::cli::SweepOptions sweep_options;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts, threads;
  std::optional<double> tolerance;
  auto* sweep = app.add_subcommand(
      "sweep", "Maximize fidelity over Hamiltonians on a time grid");
  sweep->add_option("--config", sweep_options.config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_options.out_dir, "output directory")->required();
  sweep->add_option("--seed", seed, "override optimizer.seed");
  sweep->add_option("--restarts", restarts, "override optimizer.restarts");
  sweep->add_option("--threads", threads, "override optimizer.threads");
  sweep->add_option("--tolerance", tolerance, "override optimizer.step_tolerance");
  sweep->add_flag("--progress", sweep_options.progress,
                  "emit JSON progress events on stderr");

  // verify
  std::string family, graph = "complete";
  int n_sites = 3;
  auto* verify = app.add_subcommand(
      "verify", "Check a catalog Hamiltonian against its claimed time");
  verify->add_option("family", family, "W or GHZ")->required();
  verify->add_option("n", n_sites, "number of qubits")->required();
  verify->add_option("graph", graph, "complete or chain");

  // bound
  std::string bound_target;
  int bound_n = 3;
  auto* bound = app.add_subcommand("bound", "Print analytic time bounds");
  bound->add_option("target", bound_target, "ghz | w | dicke:<k> | ame52")
      ->required();
  bound->add_option("n", bound_n, "number of qubits")->required();

  // components
  qsl::cli::SeriesOptions series_options;
  auto* components = app.add_subcommand(
      "components", "Fidelity components along a reference evolution");
  components->add_option("family", series_options.family, "W or GHZ")->required();
  components->add_option("n", series_options.n_sites, "number of qubits")->required();
  components->add_option("--graph", series_options.graph, "complete or chain");
  components->add_option("--t-start", series_options.t_start, "grid start");
  components->add_option("--t-end", series_options.t_end, "grid end")->required();
  components->add_option("--dt", series_options.dt, "grid step");
  components->add_option("--out", series_options.out_path, "output file (default stdout)");

  // tradeoff
  qsl::cli::TradeoffOptions tradeoff_options;
  auto* tradeoff = app.add_subcommand(
      "tradeoff", "Energy range required to meet a deadline");
  tradeoff->add_option("family", tradeoff_options.family, "W or GHZ")->required();
  tradeoff->add_option("n", tradeoff_options.n_sites, "number of qubits")->required();
  tradeoff->add_option("--t-start", tradeoff_options.t_start, "range start")->required();
  tradeoff->add_option("--t-end", tradeoff_options.t_end, "range end")->required();
  tradeoff->add_option("--dt", tradeoff_options.dt, "range step");
  tradeoff->add_option("--tmin", tradeoff_options.t_min,
                       "minimal time at unit bandwidth (default: formula/catalog)");
  tradeoff->add_option("--out", tradeoff_options.out_path, "output file (default stdout)");

  // catalog-dump
  std::string catalog_out;
  auto* catalog = app.add_subcommand("catalog-dump",
                                     "Dump the reference catalog as JSON");
  catalog->add_option("--out", catalog_out, "output file (default stdout)");

  // schema
  auto* schema = app.add_subcommand("config-schema",
                                    "Print the sweep configuration schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsl::cli::kExitUsage;
  }

  if (sweep->parsed()) {
    sweep_options.seed = seed;
    sweep_options.restarts = restarts;
    sweep_options.threads = threads;
    sweep_options.tolerance = tolerance;
    return qsl::cli::cmd_sweep(sweep_options);
  }
  if (verify->parsed()) return qsl::cli::cmd_verify(family, n_sites, graph);
  if (bound->parsed()) return qsl::cli::cmd_bound(bound_target, bound_n);
  if (components->parsed()) return qsl::cli::cmd_components(series_options);
  if (tradeoff->parsed()) return qsl::cli::cmd_tradeoff(tradeoff_options);
  if (catalog->parsed()) return qsl::cli::cmd_catalog_dump(catalog_out);
  if (schema->parsed()) {
    std::cout << qsl::describe_run_config_schema();
    return qsl::cli::kExitOk;
  }
  return qsl::cli::kExitUsage;
}
