#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "test_support.hpp"
#include "uncon/analysis.hpp"
#include "uncon/errors.hpp"
#include "uncon/manufactured.hpp"
#include "uncon/operators.hpp"
#include "uncon/random.hpp"
#include "uncon/timestepper.hpp"

using namespace uncon;
using testing_support::observed_order;
using testing_support::vec;
constexpr double kPi = std::numbers::pi;

namespace {

ForcingSpec quadratic_in_time() {
  ForcingSpec f;
  f.field = [](const Grid& g, double t) {
    return VectorField::sample(
        g, [t](double, double) { return t * t; }, [](double, double) { return 0.0; });
  };
  return f;
}

RunConfig linear_config(const Grid& g, double nu, double dt, double t_end) {
  RunConfig cfg(g);
  cfg.nu = nu;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.advection = false;
  return cfg;
}

}  // namespace

TEST(Forcing, ConstantAndMidpointSampling) {
  const Grid g = Grid::channel(8, 8);
  const VectorField c = forcing_average(ForcingSpec::constant(2.0, -1.0), g, 5, 0.1);
  EXPECT_DOUBLE_EQ(c.u(3, 3), 2.0);
  EXPECT_DOUBLE_EQ(c.v(3, 3), -1.0);
  EXPECT_EQ(forcing_average(ForcingSpec::none(), g, 0, 0.1).max_abs(), 0.0);

  const double dt = 0.1;
  const VectorField mid = forcing_average(quadratic_in_time(), g, 2, dt);
  EXPECT_NEAR(mid.u(0, 0), 0.25 * 0.25, 1e-15);
  ForcingSpec exact = quadratic_in_time();
  exact.exact_average = true;
  const VectorField avg = forcing_average(exact, g, 2, dt);
  EXPECT_NEAR(avg.u(0, 0), (27.0 - 8.0) * dt * dt / 3.0, 1e-14);
}

TEST(SmoothInitial, ZeroStaysZeroAndEnergyDecreases) {
  const Grid g = Grid::channel(16, 16);
  EXPECT_EQ(smooth_initial(VectorField(g), 0.01).max_abs(), 0.0);
  Rng rng(7);
  const VectorField u = random_vector(g, rng);
  const VectorField s = smooth_initial(u, 0.01);
  EXPECT_LT(norm(s), norm(u));
  EXPECT_LE(norm(s - 0.01 * laplacian(s) - u), 1e-8 * norm(u));
}

TEST(Step, ZeroStateWithoutForcingStaysZero) {
  const Grid g = Grid::channel(12, 12);
  RunConfig cfg(g);
  cfg.dt = 0.01;
  const TimeStepper ts(cfg);
  const StepState s1 = ts.step(ts.initial_state());
  EXPECT_EQ(s1.u.max_abs(), 0.0);
  EXPECT_EQ(s1.n, 1);
  EXPECT_DOUBLE_EQ(s1.t, 0.01);
}

TEST(Step, LinearStepMatchesDenseOracle) {
  const Grid g = Grid::channel(16, 16);
  const double nu = 0.7, dt = 0.03;
  const TimeStepper ts(linear_config(g, nu, dt, 1.0));
  const Eigen::MatrixXd m = oracle::linear_step(oracle::Layout(g), nu, dt);
  Rng rng(8);
  for (int k = 0; k < 3; ++k) {
    const VectorField u = random_smooth_noslip(g, rng);
    const Eigen::VectorXd want = m * vec(u);
    const StepState s1 = ts.step(ts.make_state(0, u));
    EXPECT_LE((vec(s1.u) - want).norm(), 1e-8 * want.norm());
  }
}

TEST(Step, DivergenceModeDecaysByImplicitFactor) {
  const Grid g = Grid::channel(8, 16);
  const double nu = 0.5, dt = 0.02;
  const TimeStepper ts(linear_config(g, nu, dt, 1.0));
  StepState s = ts.initial_state();
  ts.step(s);
  const double dy = g.dy();
  const double lambda = 4.0 / (dy * dy) * std::pow(std::sin(kPi * dy / 2.0), 2);
  const double factor = 1.0 / (1.0 + nu * dt * lambda);
  s = ts.make_state(0, divergence_mode(g));
  for (int k = 0; k < 5; ++k) {
    const StepState next = ts.step(s);
    EXPECT_NEAR(std::sqrt(next.diagnostics.div_norm_sq / s.diagnostics.div_norm_sq), factor, 1e-8);
    s = next;
  }
}

TEST(Run, ZeroInitialDataGivesZeroSeries) {
  const Grid g = Grid::channel(8, 8);
  RunConfig cfg(g);
  cfg.dt = 0.1;
  cfg.t_end = 0.5;
  const RunResult r = run(cfg);
  ASSERT_EQ(r.series.size(), 6u);
  for (const auto& d : r.series) {
    EXPECT_EQ(d.energy, 0.0);
    EXPECT_EQ(d.div_norm_sq, 0.0);
  }
  EXPECT_EQ(r.final_state.n, 5);
}

TEST(Run, ObserverSeesEveryState) {
  const Grid g = Grid::channel(8, 8);
  RunConfig cfg(g);
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  long seen = 0;
  run(cfg, [&](const StepState& s) { EXPECT_EQ(s.n, seen++); });
  EXPECT_EQ(seen, 4);
}

TEST(Run, EnergyDecaysWithoutForcing) {
  const Grid g = Grid::channel(24, 24);
  RunConfig cfg(g);
  cfg.nu = 0.05;
  cfg.dt = 0.01;
  cfg.t_end = 0.5;
  cfg.u0 = ManufacturedFlow(1.0, 1.0, cfg.nu).normalised(g, 1.0).velocity(g, 0.0);
  const RunResult r = run(cfg);
  for (std::size_t k = 1; k < r.series.size(); ++k)
    EXPECT_LE(r.series[k].energy, r.series[k - 1].energy * (1.0 + 1e-12));
  EXPECT_LT(r.series.back().energy, 0.9 * r.series.front().energy);
}

TEST(Run, FirstOrderInTime) {
  const Grid g = Grid::channel(16, 16);
  const ManufacturedFlow flow(1.0, 1.0, 1.0);
  std::vector<VectorField> finals;
  const std::vector<double> dts{0.04, 0.02, 0.01, 0.005};
  for (double dt : dts) {
    RunConfig cfg(g);
    cfg.nu = 1.0;
    cfg.dt = dt;
    cfg.t_end = 0.4;
    cfg.u0 = flow.velocity(g, 0.0);
    cfg.forcing.field = [flow](const Grid& gg, double t) { return flow.forcing(gg, t); };
    finals.push_back(run(cfg).final_state.u);
  }
  std::vector<double> h, err;
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    h.push_back(dts[k]);
    err.push_back(norm(finals[k] - finals[k + 1]));
  }
  EXPECT_NEAR(observed_order(h, err), 1.0, 0.2);
}

TEST(Run, ParallelFlowStaysDivergenceFree) {
  // for x-independent data the wall commutator vanishes and w = 0 is invariant
  const Grid g = Grid::channel(16, 24);
  RunConfig cfg(g);
  cfg.nu = 0.1;
  cfg.dt = 0.01;
  cfg.t_end = 0.2;
  cfg.u0 = VectorField::sample(
      g, [](double, double y) { return std::sin(kPi * y) * (1 + y); }, [](double, double) { return 0.0; });
  cfg.forcing = ForcingSpec::constant(1.0, 0.0);
  const RunResult r = run(cfg);
  for (const auto& d : r.series) EXPECT_LE(d.div_norm_sq, 1e-24);
}

TEST(Run, DivergenceIsNonIncreasingAfterTheFirstStep) {
  const Grid g = Grid::channel(24, 24);
  RunConfig cfg(g);
  cfg.nu = 0.1;
  cfg.dt = 0.01;
  cfg.t_end = 0.3;
  Rng rng(9);
  cfg.u0 = random_smooth_noslip(g, rng);
  const RunResult r = run(cfg);
  for (std::size_t k = 2; k < r.series.size(); ++k)
    EXPECT_LE(r.series[k].div_norm_sq, r.series[k - 1].div_norm_sq * (1.0 + 1e-6) + 1e-28);
}

TEST(Run, NonhomogeneousDivergenceRelaxesToPrescribedField) {
  DecayOptions opt;
  opt.nx = opt.ny = 24;
  opt.nu = 0.5;
  opt.dt = 2e-3;
  opt.t_end = 0.5;
  opt.h_amplitude = 0.3;
  const DecayResult res = decay_experiment(opt);
  const double slowest = std::exp(-2.0 * opt.nu * kPi * kPi * opt.t_end);
  EXPECT_LT(res.run.series.back().div_norm_sq, 1.1 * slowest * res.run.series.front().div_norm_sq);
  EXPECT_LT(res.relative_error, 0.05);
}

TEST(Run, BlowupThresholdReportsStep) {
  const Grid g = Grid::channel(12, 12);
  RunConfig cfg(g);
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.forcing = ForcingSpec::constant(50.0, 0.0);
  cfg.blowup_threshold = 1.0;
  try {
    run(cfg);
    FAIL() << "expected Blowup";
  } catch (const Blowup& e) {
    EXPECT_GE(e.step(), 1);
  }
}

TEST(RunConfigValidation, RejectsBadParameters) {
  const Grid g = Grid::channel(8, 8);
  auto expect_msg = [](RunConfig cfg, const std::string& needle) {
    try {
      cfg.validate();
      FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  RunConfig c(g);
  c.dt = -1.0;
  expect_msg(c, "dt must be positive");
  c = RunConfig(g);
  c.nu = 0.0;
  expect_msg(c, "nu must be positive");
  c = RunConfig(g);
  c.dt = 2.0;
  expect_msg(c, "dt must not exceed t_end");
  c = RunConfig(g);
  c.u0 = VectorField(Grid::channel(4, 4));
  expect_msg(c, "different grid");
  EXPECT_EQ(RunConfig(g).steps(), 1000);
}

TEST(WeakIdentity, HoldsForOneStep) {
  const Grid g = Grid::channel(16, 16);
  RunConfig cfg(g);
  cfg.nu = 0.3;
  cfg.dt = 0.02;
  Rng rng(10);
  cfg.u0 = random_smooth_noslip(g, rng);
  const TimeStepper ts(cfg);
  const StepState s0 = ts.initial_state();
  const StepState s1 = ts.step(s0);
  std::vector<ScalarField> tests;
  for (int k = 0; k < 8; ++k) tests.push_back(random_scalar(g, rng));
  EXPECT_LE(weak_divergence_residual(s0.u, s1.u, s0.split.p_gh, cfg.nu, cfg.dt, tests), 1e-8);
}
