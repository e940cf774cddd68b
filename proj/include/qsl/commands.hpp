#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qsl::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitClaimFailed = 2;
inline constexpr int kExitInternal = 3;

struct SweepOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<int> threads;
  std::optional<double> tolerance;  // optimizer.step_tolerance override
  bool progress = false;
};

struct SeriesOptions {
  std::string family;  // W | GHZ
  int n_sites = 3;
  std::string graph = "complete";
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 0.01;
  std::string out_path;  // empty = stdout
};

struct TradeoffOptions {
  std::string family;
  int n_sites = 3;
  double t_start = 0.1;
  double t_end = 1.0;
  double dt = 0.01;
  std::optional<double> t_min;  // override the formula / catalog value
  std::string out_path;
};

int cmd_sweep(const SweepOptions& options);
int cmd_verify(const std::string& family, int n_sites, const std::string& graph);
int cmd_bound(const std::string& target, int n_sites);
int cmd_components(const SeriesOptions& options);
int cmd_tradeoff(const TradeoffOptions& options);
int cmd_catalog_dump(const std::string& out_path);

}  // namespace qsl::cli
