#include "qsl/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

namespace qsl {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Per-restart seed from the master seed, the time value's bit pattern and
/// the restart counter; independent of thread scheduling and grid layout.
std::uint64_t derive_seed(std::uint64_t master, double t, std::uint64_t index) {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ull);
  h = mix64(h ^ (std::bit_cast<std::uint64_t>(t) + 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (index + 0x9e3779b97f4a7c15ull));
  return h;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

Eigen::VectorXd sample_box(std::mt19937_64& rng, int dim, double box) {
  Eigen::VectorXd p(dim);
  for (int k = 0; k < dim; ++k) p(k) = box * (2.0 * uniform_unit(rng) - 1.0);
  return p;
}

/// Fidelity of the bandwidth-normalized candidate at fixed time. Owns the
/// scratch objects so concurrent evaluators never share state.
class Evaluator {
 public:
  Evaluator(const ParameterSpace& space, Vector psi0, Vector target, double t)
      : space_(space),
        psi0_(std::move(psi0)),
        target_(std::move(target)),
        t_(t),
        h_(space.state_dim(), space.state_dim()),
        solver_(space.state_dim()) {}

  double operator()(const Eigen::VectorXd& p) {
    ++evaluations_;
    space_.assemble_into(p, h_);
    solver_.compute(h_);
    if (solver_.info() != Eigen::Success) return 0.0;
    const auto& energies = solver_.eigenvalues();
    const double e_min = energies(0);
    const double e_max = energies(energies.size() - 1);
    const double bandwidth = e_max - e_min;
    if (bandwidth <= 1e-12 * std::max(1.0, std::abs(e_max))) return 0.0;

    const Matrix& v = solver_.eigenvectors();
    const Vector a = v.adjoint() * psi0_;
    const Vector b = v.adjoint() * target_;
    Complex overlap = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      const double phase = -(energies(k) - e_min) / bandwidth * t_;
      overlap += std::conj(b(k)) * a(k) * std::exp(Complex(0.0, phase));
    }
    return std::norm(overlap);
  }

  long evaluations() const { return evaluations_; }

 private:
  const ParameterSpace& space_;
  Vector psi0_;
  Vector target_;
  double t_;
  Matrix h_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  long evaluations_ = 0;
};

struct LocalResult {
  double fidelity;
  Eigen::VectorXd params;
};

/// Downhill simplex on -fidelity. Stops on simplex collapse (step_tol),
/// objective spread (obj_tol) or the evaluation budget.
LocalResult nelder_mead(Evaluator& f, const Eigen::VectorXd& x0,
                        double initial_step, double step_tol, double obj_tol,
                        long max_evals) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> xs(static_cast<std::size_t>(n) + 1, x0);
  std::vector<double> gs(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) xs[static_cast<std::size_t>(i)](i - 1) += initial_step;
  for (int i = 0; i <= n; ++i) gs[static_cast<std::size_t>(i)] = -f(xs[static_cast<std::size_t>(i)]);

  std::vector<int> order(static_cast<std::size_t>(n) + 1);
  const long start_evals = f.evaluations() - (n + 1);
  while (f.evaluations() - start_evals < max_evals) {
    for (int i = 0; i <= n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return gs[static_cast<std::size_t>(a)] < gs[static_cast<std::size_t>(b)]; });
    const int best = order[0], worst = order[static_cast<std::size_t>(n)];
    const int second_worst = order[static_cast<std::size_t>(n - 1)];

    if (gs[static_cast<std::size_t>(worst)] - gs[static_cast<std::size_t>(best)] <= obj_tol) break;
    double diameter = 0.0;
    for (int i = 0; i <= n; ++i)
      diameter = std::max(
          diameter, (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(best)]).cwiseAbs().maxCoeff());
    if (diameter <= step_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += xs[static_cast<std::size_t>(i)];
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - xs[static_cast<std::size_t>(worst)]);
    const double g_reflected = -f(reflected);

    if (g_reflected < gs[static_cast<std::size_t>(best)]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (reflected - centroid);
      const double g_expanded = -f(expanded);
      if (g_expanded < g_reflected) {
        xs[static_cast<std::size_t>(worst)] = expanded;
        gs[static_cast<std::size_t>(worst)] = g_expanded;
      } else {
        xs[static_cast<std::size_t>(worst)] = reflected;
        gs[static_cast<std::size_t>(worst)] = g_reflected;
      }
      continue;
    }
    if (g_reflected < gs[static_cast<std::size_t>(second_worst)]) {
      xs[static_cast<std::size_t>(worst)] = reflected;
      gs[static_cast<std::size_t>(worst)] = g_reflected;
      continue;
    }

    const bool outside = g_reflected < gs[static_cast<std::size_t>(worst)];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid - 0.5 * (centroid - xs[static_cast<std::size_t>(worst)]));
    const double g_contracted = -f(contracted);
    if (g_contracted < std::min(g_reflected, gs[static_cast<std::size_t>(worst)])) {
      xs[static_cast<std::size_t>(worst)] = contracted;
      gs[static_cast<std::size_t>(worst)] = g_contracted;
      continue;
    }

    for (int i = 0; i <= n; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      xs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(best)] +
                                        0.5 * (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(best)]);
      gs[static_cast<std::size_t>(i)] = -f(xs[static_cast<std::size_t>(i)]);
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (gs[static_cast<std::size_t>(i)] < gs[static_cast<std::size_t>(best)]) best = i;
  return {-gs[static_cast<std::size_t>(best)], xs[static_cast<std::size_t>(best)]};
}

/// BFGS ascent with central finite-difference gradients and backtracking
/// line search; the quasi-Newton alternative to the simplex.
LocalResult quasi_newton(Evaluator& f, const Eigen::VectorXd& x0,
                         double step_tol, double obj_tol, long max_evals) {
  const int n = static_cast<int>(x0.size());
  const double fd_step = 1e-6;

  Eigen::VectorXd x = x0;
  double fx = f(x);
  auto gradient = [&](const Eigen::VectorXd& at) {
    Eigen::VectorXd g(n);
    Eigen::VectorXd probe = at;
    for (int k = 0; k < n; ++k) {
      probe(k) = at(k) + fd_step;
      const double fp = f(probe);
      probe(k) = at(k) - fd_step;
      const double fm = f(probe);
      probe(k) = at(k);
      g(k) = (fp - fm) / (2.0 * fd_step);  // ascent direction
    }
    return g;
  };

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = gradient(x);
  const long start_evals = f.evaluations();
  while (f.evaluations() - start_evals < max_evals) {
    Eigen::VectorXd direction = h_inv * g;
    if (direction.dot(g) <= 0.0) direction = g;  // keep an ascent direction
    if (direction.cwiseAbs().maxCoeff() <= step_tol) break;

    double step = 1.0;
    double f_next = fx;
    Eigen::VectorXd x_next = x;
    const double slope = direction.dot(g);
    bool advanced = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_next = x + step * direction;
      f_next = f(x_next);
      if (f_next >= fx + 1e-4 * step * slope) {
        advanced = true;
        break;
      }
      step *= 0.5;
    }
    if (!advanced) break;

    const Eigen::VectorXd g_next = gradient(x_next);
    const Eigen::VectorXd s = x_next - x;
    const Eigen::VectorXd y = g_next - g;  // ascent convention
    const double sy = s.dot(y);
    if (std::abs(f_next - fx) <= obj_tol || s.cwiseAbs().maxCoeff() <= step_tol) {
      x = x_next;
      fx = f_next;
      break;
    }
    if (sy < -1e-12 * s.norm() * y.norm()) {
      // BFGS update of the descent problem for -f; with the ascent
      // convention s.y is negative near a maximum.
      const Eigen::VectorXd hy = h_inv * y;
      const double yhy = y.dot(hy);
      h_inv += (yhy - sy) / (sy * sy) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    } else {
      h_inv.setIdentity();
    }
    x = x_next;
    fx = f_next;
    g = g_next;
  }
  return {fx, x};
}

LocalResult local_search(Evaluator& f, const Eigen::VectorXd& x0,
                         const OptimizeConfig& cfg, long max_evals) {
  if (cfg.method == LocalMethod::QuasiNewton)
    return quasi_newton(f, x0, cfg.step_tolerance, cfg.objective_tolerance,
                        max_evals);
  return nelder_mead(f, x0, 0.1 * cfg.sample_box, cfg.step_tolerance,
                     cfg.objective_tolerance, max_evals);
}

void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  long n_threads = threads > 0
                       ? threads
                       : static_cast<long>(std::thread::hardware_concurrency());
  n_threads = std::max(1L, std::min(n_threads, count));
  if (n_threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count || failed.load()) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

long evaluation_budget(const OptimizeConfig& cfg, int dim) {
  if (cfg.max_evaluations > 0) return cfg.max_evaluations;
  return 200L * (dim + 1);
}

struct SweepContext {
  ParameterSpace space;
  Vector psi0;
  Vector target;
};

OptimumAtTime maximize_impl(double t, const OptimizeConfig& cfg,
                            const SweepContext& ctx,
                            const Eigen::VectorXd* warm_start) {
  const int dim = ctx.space.dim();
  const long budget = evaluation_budget(cfg, dim);
  const long slots = cfg.restarts + (warm_start ? 1 : 0);

  std::vector<LocalResult> results(static_cast<std::size_t>(slots));
  std::vector<long> evals(static_cast<std::size_t>(slots), 0);

  parallel_for(slots, cfg.threads, [&](long slot) {
    Evaluator f(ctx.space, ctx.psi0, ctx.target, t);
    Eigen::VectorXd x0;
    if (warm_start && slot == 0) {
      x0 = *warm_start;
    } else {
      const std::uint64_t restart = static_cast<std::uint64_t>(
          warm_start ? slot - 1 : slot);
      std::mt19937_64 rng(derive_seed(cfg.seed, t, restart));
      x0 = sample_box(rng, dim, cfg.sample_box);
    }
    results[static_cast<std::size_t>(slot)] = local_search(f, x0, cfg, budget);
    evals[static_cast<std::size_t>(slot)] = f.evaluations();
  });

  OptimumAtTime best;
  best.fidelity = -1.0;
  for (long slot = 0; slot < slots; ++slot) {
    const auto& r = results[static_cast<std::size_t>(slot)];
    best.evaluations += evals[static_cast<std::size_t>(slot)];
    if (r.fidelity > best.fidelity) {  // stable: earliest slot wins ties
      best.fidelity = r.fidelity;
      best.params = r.params;
    }
  }
  return best;
}

SweepContext make_context(const OptimizeConfig& cfg) {
  return {ParameterSpace(cfg.graph, cfg.symmetry, cfg.symmetric_couplings),
          zero_state(cfg.n_sites), make_target(cfg.target, cfg.n_sites)};
}

}  // namespace

Vector make_target(const TargetSpec& spec, int n_sites) {
  switch (spec.kind) {
    case TargetKind::Ghz: return ghz(n_sites);
    case TargetKind::W: return w_state(n_sites);
    case TargetKind::Dicke: return dicke(n_sites, spec.dicke_k);
    case TargetKind::Ame52:
      if (n_sites != 5)
        throw std::invalid_argument("the AME(5,2) target needs 5 sites");
      return ame52();
  }
  throw std::logic_error("unreachable");
}

std::string target_name(const TargetSpec& spec) {
  switch (spec.kind) {
    case TargetKind::Ghz: return "ghz";
    case TargetKind::W: return "w";
    case TargetKind::Dicke: return "dicke:" + std::to_string(spec.dicke_k);
    case TargetKind::Ame52: return "ame52";
  }
  return "?";
}

void OptimizeConfig::validate() const {
  if (n_sites < 2 || n_sites > 7)
    throw std::invalid_argument("n_sites must lie in [2, 7]");
  if (graph.n_sites != n_sites)
    throw std::invalid_argument("graph size does not match n_sites");
  if (target.kind == TargetKind::Dicke &&
      (target.dicke_k < 0 || target.dicke_k > n_sites))
    throw std::invalid_argument("dicke excitation count out of range");
  if (target.kind == TargetKind::Ame52 && n_sites != 5)
    throw std::invalid_argument("the AME(5,2) target needs 5 sites");
  if (grid.empty()) throw std::invalid_argument("time grid is empty");
  for (const auto& seg : grid) {
    if (!(seg.start >= 0.0) || !(seg.end > seg.start) || !(seg.dt > 0.0))
      throw std::invalid_argument("invalid time grid segment");
    if (!allow_wide_steps && (seg.dt < 1e-4 || seg.dt > 1e-1))
      throw std::invalid_argument(
          "grid dt outside [1e-4, 1e-1]; set allow_wide_steps to override");
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(sample_box > 0.0)) throw std::invalid_argument("sample_box must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(step_tolerance > 0.0) || !(objective_tolerance > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (refine_max_halvings < 0 || !(refine_threshold > 0.0) ||
      !(refine_min_dt > 0.0))
    throw std::invalid_argument("invalid refinement settings");
}

double objective(const Eigen::VectorXd& p, double t, const ParameterSpace& space,
                 const Vector& target) {
  Evaluator f(space, zero_state(space.graph().n_sites), target, t);
  return f(p);
}

double objective(const ParameterVector& params, double t,
                 const InteractionGraph& graph, const SymmetryClass& sym,
                 const TargetSpec& target) {
  const ParameterSpace space(graph, sym);
  return objective(space.flatten(params), t, space,
                   make_target(target, graph.n_sites));
}

OptimumAtTime maximize_at_time(double t, const OptimizeConfig& cfg) {
  cfg.validate();
  const SweepContext ctx = make_context(cfg);
  return maximize_impl(t, cfg, ctx, nullptr);
}

std::vector<double> materialize_grid(const std::vector<GridSegment>& segments) {
  std::vector<double> times;
  for (const auto& seg : segments) {
    const double span = seg.end - seg.start;
    const long steps = std::lround(std::ceil(span / seg.dt - 1e-9));
    for (long k = 0; k <= steps; ++k)
      times.push_back(std::min(seg.start + static_cast<double>(k) * seg.dt, seg.end));
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) {
                            return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
                          }),
              times.end());
  return times;
}

FidelityCurve sweep(const OptimizeConfig& cfg) {
  cfg.validate();
  const SweepContext ctx = make_context(cfg);
  const std::vector<double> base_times = materialize_grid(cfg.grid);

  struct Point {
    double t;
    double fidelity;
    Eigen::VectorXd params;
    long evaluations;
    double min_dt;  // refinement floor inherited from the segment
  };

  auto segment_floor = [&](double t) {
    double dt = 1e-1;
    for (const auto& seg : cfg.grid)
      if (t >= seg.start - 1e-12 && t <= seg.end + 1e-12) {
        dt = seg.dt;
        break;
      }
    double floor_dt = dt;
    for (int i = 0; i < cfg.refine_max_halvings; ++i) floor_dt /= 2.0;
    return std::max(floor_dt, cfg.refine_min_dt);
  };

  std::vector<Point> points;
  points.reserve(base_times.size());
  int emitted = 0;
  auto compute_point = [&](double t, const Eigen::VectorXd* warm) {
    const OptimumAtTime res = maximize_impl(t, cfg, ctx, warm);
    if (cfg.on_progress)
      cfg.on_progress({t, res.fidelity, res.evaluations, emitted,
                       static_cast<int>(base_times.size())});
    ++emitted;
    return Point{t, res.fidelity, res.params, res.evaluations, segment_floor(t)};
  };

  const Eigen::VectorXd* warm = nullptr;
  for (double t : base_times) {
    points.push_back(compute_point(t, warm));
    if (cfg.warm_start) warm = &points.back().params;
  }

  if (cfg.refine) {
    bool inserted = true;
    while (inserted) {
      inserted = false;
      for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double gap = std::abs(points[i + 1].fidelity - points[i].fidelity);
        const double spacing = points[i + 1].t - points[i].t;
        const double floor_dt = std::min(points[i].min_dt, points[i + 1].min_dt);
        if (gap > cfg.refine_threshold && spacing > 2.0 * floor_dt) {
          const double mid = 0.5 * (points[i].t + points[i + 1].t);
          const Eigen::VectorXd* w =
              cfg.warm_start ? &points[i].params : nullptr;
          Point p = compute_point(mid, w);
          p.min_dt = floor_dt;
          points.insert(points.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                        std::move(p));
          inserted = true;
          ++i;  // skip the freshly split right half until the next pass
        }
      }
    }
  }

  FidelityCurve curve;
  curve.times.reserve(points.size());
  for (auto& p : points) {
    curve.times.push_back(p.t);
    curve.fidelities.push_back(p.fidelity);
    curve.best_params.push_back(std::move(p.params));
    curve.evaluations.push_back(p.evaluations);
  }
  return curve;
}

std::optional<double> minimal_time(const FidelityCurve& curve, double epsilon) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (curve.fidelities[i] >= 1.0 - epsilon) return curve.times[i];
  return std::nullopt;
}

std::optional<double> threshold_time(const FidelityCurve& curve, double level) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (curve.fidelities[i] >= level) return curve.times[i];
  return std::nullopt;
}

}  // namespace qsl
