#pragma once

#include "qsl/dynamics.hpp"
#include "qsl/operators.hpp"
#include "qsl/states.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qsl {

enum class TargetKind { Ghz, W, Dicke, Ame52 };

struct TargetSpec {
  TargetKind kind = TargetKind::Ghz;
  int dicke_k = 1;
};

Vector make_target(const TargetSpec& spec, int n_sites);
std::string target_name(const TargetSpec& spec);

struct GridSegment {
  double start;
  double end;
  double dt;
};

enum class LocalMethod { NelderMead, QuasiNewton };

struct ProgressEvent {
  double time;
  double best_fidelity;
  long evaluations;
  int point_index;
  int point_count;  // known so far (refinement may extend)
};

struct OptimizeConfig {
  TargetSpec target;
  int n_sites = 3;
  InteractionGraph graph;
  SymmetryClass symmetry = SymmetryClass::full_permutation();
  bool symmetric_couplings = false;

  std::vector<GridSegment> grid;
  bool allow_wide_steps = false;  // lift the default dt <= 1e-1 validation

  int restarts = 200;
  double sample_box = 1.0;
  double step_tolerance = 1e-10;
  double objective_tolerance = 1e-12;
  long max_evaluations = 0;  // per local search; 0 = scaled by dimension
  std::uint64_t seed = 0;
  LocalMethod method = LocalMethod::NelderMead;

  bool warm_start = true;
  bool refine = true;
  double refine_threshold = 0.05;
  double refine_min_dt = 1e-4;
  int refine_max_halvings = 3;

  double epsilon = 1e-6;  // fidelity convergence threshold for minimal_time
  int threads = 0;        // 0 = hardware concurrency

  std::function<void(const ProgressEvent&)> on_progress;

  void validate() const;  // throws std::invalid_argument
};

struct FidelityCurve {
  std::vector<double> times;
  std::vector<double> fidelities;
  std::vector<Eigen::VectorXd> best_params;
  std::vector<long> evaluations;

  std::size_t size() const { return times.size(); }
};

/// Fidelity of the bandwidth-normalized candidate: F = |<target| exp(-i H t)
/// |0...0>|^2 with H = normalize_bandwidth(space.assemble(p)). Degenerate
/// candidates (zero bandwidth) score 0 rather than erroring.
double objective(const Eigen::VectorXd& p, double t, const ParameterSpace& space,
                 const Vector& target);
double objective(const ParameterVector& params, double t,
                 const InteractionGraph& graph, const SymmetryClass& sym,
                 const TargetSpec& target);

struct OptimumAtTime {
  double fidelity = 0.0;
  Eigen::VectorXd params;
  long evaluations = 0;
};

/// Best of `restarts` multistart local searches at a fixed time.
/// Deterministic for a given (config, seed): per-restart seeds derive from
/// the master seed and the time's bit pattern, results merge by
/// max-with-stable-tiebreak on restart index regardless of thread schedule.
OptimumAtTime maximize_at_time(double t, const OptimizeConfig& cfg);

/// maximize_at_time over the materialized grid, optional warm starts from
/// the previous point and automatic local grid refinement where the
/// fidelity increment between neighbours exceeds the threshold.
FidelityCurve sweep(const OptimizeConfig& cfg);

/// Smallest grid time with fidelity >= 1 - epsilon.
std::optional<double> minimal_time(const FidelityCurve& curve, double epsilon);
/// Smallest grid time with fidelity >= level.
std::optional<double> threshold_time(const FidelityCurve& curve, double level);

std::vector<double> materialize_grid(const std::vector<GridSegment>& segments);

}  // namespace qsl
