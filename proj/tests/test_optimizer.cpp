#include "qsl/optimizer.hpp"

#include "qsl/reference.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

OptimizeConfig w3_config() {
  OptimizeConfig cfg;
  cfg.target = {TargetKind::W, 1};
  cfg.n_sites = 3;
  cfg.graph = InteractionGraph::complete(3);
  cfg.symmetry = SymmetryClass::full_permutation();
  cfg.grid = {{0.0, 0.5, 0.1}};
  cfg.restarts = 8;
  cfg.seed = 99;
  cfg.threads = 2;
  return cfg;
}

Eigen::VectorXd w3_cross_coupling(const ParameterSpace& space, double scale) {
  ParameterVector pv;
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 2) = h(2, 0) = scale;
  pv.couplings.push_back(h);
  pv.fields.emplace_back(0.0, 0.0, 0.0);
  return space.flatten(pv);
}

}  // namespace

TEST_CASE("objective reproduces the known W generator at t = pi") {
  const ParameterSpace space(InteractionGraph::complete(3),
                             SymmetryClass::full_permutation());
  const Vector target = w_state(3);
  const Eigen::VectorXd p = w3_cross_coupling(space, 1.0);
  CHECK(objective(p, kPi, space, target) >= 1.0 - 1e-9);

  // Normalization makes the objective scale-free.
  CHECK(objective(3.7 * p, kPi, space, target) ==
        doctest::Approx(objective(p, kPi, space, target)).epsilon(1e-10));

  // Zero parameters have zero bandwidth and score 0 rather than erroring.
  CHECK(objective(Eigen::VectorXd::Zero(space.dim()), kPi, space, target) == 0.0);
}

TEST_CASE("objective at t = 0 is the static overlap") {
  const ParameterSpace space(InteractionGraph::complete(3),
                             SymmetryClass::full_permutation());
  std::mt19937_64 rng(1);
  Eigen::VectorXd p(space.dim());
  for (int k = 0; k < space.dim(); ++k) p(k) = test::uniform(rng);
  CHECK(objective(p, 0.0, space, ghz(3)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(objective(p, 0.0, space, w_state(3)) <= 1e-12);
}

TEST_CASE("structured objective overload") {
  ParameterVector pv;
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 2) = h(2, 0) = 1.0;
  pv.couplings.push_back(h);
  pv.fields.emplace_back(0.0, 0.0, 0.0);
  const double f = objective(pv, kPi, InteractionGraph::complete(3),
                             SymmetryClass::full_permutation(),
                             {TargetKind::W, 1});
  CHECK(f >= 1.0 - 1e-9);
}

TEST_CASE("maximize_at_time at t = 0 returns the static overlap") {
  auto cfg = w3_config();
  cfg.target = {TargetKind::Ghz, 1};
  const auto res = maximize_at_time(0.0, cfg);
  CHECK(res.fidelity == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(res.evaluations > 0);
}

TEST_CASE("restart monotonicity under a shared seed stream") {
  auto cfg = w3_config();
  cfg.restarts = 2;
  const double f2 = maximize_at_time(kPi, cfg).fidelity;
  cfg.restarts = 10;
  const double f10 = maximize_at_time(kPi, cfg).fidelity;
  CHECK(f10 >= f2);
  CHECK(f10 >= 1.0 - 1e-6);  // the optimum is reachable at t = pi
}

TEST_CASE("sweep is deterministic and thread-count independent") {
  auto cfg = w3_config();
  cfg.grid = {{2.9, 3.3, 0.1}};
  cfg.restarts = 6;

  const FidelityCurve a = sweep(cfg);
  const FidelityCurve b = sweep(cfg);
  cfg.threads = 1;
  const FidelityCurve c = sweep(cfg);

  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.times[i] == b.times[i]);
    CHECK(a.fidelities[i] == b.fidelities[i]);  // bit-identical
    CHECK(a.fidelities[i] == c.fidelities[i]);
    CHECK((a.best_params[i] - b.best_params[i]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reported optima reproduce from their parameters") {
  auto cfg = w3_config();
  cfg.grid = {{3.0, 3.2, 0.1}};
  cfg.restarts = 6;
  const ParameterSpace space(cfg.graph, cfg.symmetry);
  const Vector target = w_state(3);
  const FidelityCurve curve = sweep(cfg);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double again =
        objective(curve.best_params[i], curve.times[i], space, target);
    CHECK(again == doctest::Approx(curve.fidelities[i]).epsilon(1e-9));
  }
}

TEST_CASE("a short W3 sweep localizes the minimal time near pi") {
  auto cfg = w3_config();
  cfg.grid = {{2.9, 3.4, 0.05}};
  cfg.restarts = 24;
  const FidelityCurve curve = sweep(cfg);
  const auto t_min = minimal_time(curve, 1e-4);
  REQUIRE(t_min.has_value());
  CHECK(*t_min >= kPi - 0.05);
  CHECK(*t_min <= kPi + 0.06);
}

TEST_CASE("quasi-Newton local search also reaches the W3 optimum") {
  auto cfg = w3_config();
  cfg.method = LocalMethod::QuasiNewton;
  cfg.restarts = 12;
  const auto res = maximize_at_time(kPi, cfg);
  CHECK(res.fidelity >= 1.0 - 1e-6);
}

TEST_CASE("grid refinement inserts midpoints across fidelity jumps") {
  auto cfg = w3_config();
  cfg.grid = {{0.2, 3.2, 0.2}};
  cfg.allow_wide_steps = true;
  cfg.restarts = 6;
  cfg.refine = true;
  cfg.refine_threshold = 0.05;
  cfg.refine_max_halvings = 2;
  const FidelityCurve refined = sweep(cfg);
  cfg.refine = false;
  const FidelityCurve coarse = sweep(cfg);
  CHECK(refined.size() > coarse.size());
  for (std::size_t i = 0; i + 1 < refined.size(); ++i)
    CHECK(refined.times[i] < refined.times[i + 1]);
}

TEST_CASE("minimal_time and threshold_time scan the curve") {
  FidelityCurve curve;
  curve.times = {0.0, 1.0, 2.0};
  curve.fidelities = {0.2, 0.9999995, 1.0};
  curve.best_params = {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1),
                       Eigen::VectorXd::Zero(1)};
  curve.evaluations = {1, 1, 1};

  CHECK(*minimal_time(curve, 1e-6) == 1.0);
  CHECK(*minimal_time(curve, 1e-9) == 2.0);
  CHECK(*threshold_time(curve, 0.5) == 1.0);
  CHECK(*threshold_time(curve, 0.0) == 0.0);

  FidelityCurve low = curve;
  low.fidelities = {0.1, 0.2, 0.3};
  CHECK_FALSE(minimal_time(low, 1e-6).has_value());
  CHECK_FALSE(threshold_time(low, 0.99).has_value());
}

TEST_CASE("progress events fire once per grid point") {
  auto cfg = w3_config();
  cfg.refine = false;
  int events = 0;
  double last_t = -1.0;
  cfg.on_progress = [&](const ProgressEvent& ev) {
    ++events;
    CHECK(ev.time > last_t);
    last_t = ev.time;
    CHECK(ev.evaluations > 0);
  };
  const FidelityCurve curve = sweep(cfg);
  CHECK(events == static_cast<int>(curve.size()));
}

TEST_CASE("config validation") {
  auto cfg = w3_config();
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = w3_config();
  cfg.grid = {{0.0, 10.0, 0.5}};  // dt above the default ceiling
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.allow_wide_steps = true;
  CHECK_NOTHROW(cfg.validate());

  cfg = w3_config();
  cfg.target = {TargetKind::Ame52, 1};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // needs 5 sites

  cfg = w3_config();
  cfg.graph = InteractionGraph::complete(4);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = w3_config();
  cfg.grid = {{2.0, 1.0, 0.1}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("grid materialization") {
  const auto times = materialize_grid({{0.0, 0.3, 0.1}, {0.3, 0.32, 0.01}});
  REQUIRE(times.size() == 6);  // 0, .1, .2, .3, .31, .32
  CHECK(times.front() == 0.0);
  CHECK(times.back() == doctest::Approx(0.32));
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    CHECK(times[i] < times[i + 1]);
}
