// Acceptance suite: one PASS/FAIL line per criterion, INFO lines for context.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "uncon/analysis.hpp"
#include "uncon/errors.hpp"
#include "uncon/manufactured.hpp"
#include "uncon/operators.hpp"
#include "uncon/pressure.hpp"
#include "uncon/random.hpp"
#include "uncon/timestepper.hpp"

using namespace uncon;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome beta_bound() {
  std::vector<double> beta, ratio0;
  double dense32_secs = 0.0;
  for (int n : {16, 24, 32}) {
    const auto t0 = std::chrono::steady_clock::now();
    const BetaEstimate b = beta_estimate(Grid::channel(n, n));
    if (n == 32) dense32_secs = elapsed_since(t0);
    beta.push_back(b.beta_emp);
    ratio0.push_back(b.sup_ratio.front());
  }
  std::printf("INFO criterion 1: sup ratio at c = 0 for 16/24/32: %s %s %s (theoretical constant 2/3)\n", fmt_num(ratio0[0]).c_str(),
              fmt_num(ratio0[1]).c_str(), fmt_num(ratio0[2]).c_str());
  bool ok = dense32_secs < 300.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    ok = ok && beta[k] <= 0.75;
    if (k > 0) ok = ok && beta[k] <= beta[k - 1] * 1.02 + 1e-12;
  }
  return {ok, "beta_emp 16/24/32 = " + fmt_num(beta[0]) + ", " + fmt_num(beta[1]) + ", " + fmt_num(beta[2]) +
                  " (bound 0.75, non-increasing within 2%); dense 32^2 took " + fmt_num(dense32_secs) + " s"};
}

Outcome periodic_identity() {
  const Grid g = Grid::periodic(32, 32);
  const PressureSolver ps(g);
  Rng rng(1001);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    VectorField a = random_vector(g, rng);
    a.u.subtract_mean();
    a.v.subtract_mean();
    const VectorField r = a - ps.project(a).pa - ps.q_operator(a);
    worst = std::max(worst, norm(r) / norm(a));
  }
  return {worst <= 1e-8, "max |(I-P-Q)g|/|g| = " + fmt_num(worst) + " over 100 fields (tol 1e-8)"};
}

Outcome projection_identities() {
  const Grid g = Grid::channel(32, 32);
  const PressureSolver ps(g);
  Rng rng(1002);
  double idem = 0.0, sym = 0.0, pyth = 0.0;
  for (int k = 0; k < 100; ++k) {
    const VectorField a = random_vector(g, rng);
    const VectorField b = random_vector(g, rng);
    const VectorField pa = ps.project(a).pa;
    const VectorField pb = ps.project(b).pa;
    idem = std::max(idem, norm(ps.project(pa).pa - pa) / norm(a));
    sym = std::max(sym, std::abs(inner(pa, b) - inner(a, pb)) / (norm(a) * norm(b)));
    pyth = std::max(pyth, std::abs(inner(pa, pa) + inner(a - pa, a - pa) - inner(a, a)) / inner(a, a));
  }
  const bool ok = idem <= 1e-8 && sym <= 1e-8 && pyth <= 1e-8;
  return {ok, "idempotence " + fmt_num(idem) + ", symmetry " + fmt_num(sym) + ", Pythagoras " + fmt_num(pyth) +
                  " (tol 1e-8)"};
}

DecayOptions decay_options() {
  DecayOptions opt;
  opt.nx = opt.ny = 128;
  opt.nu = 0.1;
  opt.ly = 1.0;
  opt.dt = 1e-3;
  return opt;
}

Outcome divergence_decay() {
  const auto t0 = std::chrono::steady_clock::now();
  const DecayResult r = decay_experiment(decay_options());
  const double secs = elapsed_since(t0);
  const bool ok = r.relative_error <= 0.03 && std::abs(r.expected - 0.9870) < 5e-4 && secs < 120.0;
  return {ok, "rate " + fmt_num(r.rate) + " vs " + fmt_num(r.expected) + ", relative error " +
                  fmt_num(r.relative_error) + " (tol 0.03), runtime " + fmt_num(secs) + " s (limit 120)"};
}

Outcome stability_sweep() {
  const Grid g = Grid::channel(32, 32);
  const double nu = 0.05;
  const VectorField u0 = ManufacturedFlow(g.lx(), g.ly(), nu).normalised(g, 1.0).velocity(g, 0.0);
  std::string detail = "|grad u0| = " + fmt_num(norms(u0).h1_semi) + "; sup|grad u|^2 at dt 1e-4/1e-3/1e-2/1e-1:";
  double lo = INFINITY, hi = 0.0;
  for (double dt : {1e-4, 1e-3, 1e-2, 1e-1}) {
    RunConfig cfg(g);
    cfg.nu = nu;
    cfg.dt = dt;
    cfg.t_end = 0.5;
    cfg.u0 = u0;
    const RunResult r = run(cfg);  // Blowup propagates and fails the criterion
    const double s = r.aggregates.sup_grad_sq;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    detail += " " + fmt_num(s);
  }
  return {hi < 2.0 * lo, detail + "; spread " + fmt_num(hi / lo) + " (limit 2), no blowup"};
}

Outcome spectrum_positivity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (int n : {16, 24}) {
    const SpectrumReport s = spectrum(Grid::channel(n, n));
    const double re = s.min_real_part * s.length_scale_sq;
    const double ab = s.min_abs * s.length_scale_sq;
    ok = ok && re > 0.0 && ab > 1e-6;
    detail += std::to_string(n) + "^2: min Re " + fmt_num(re) + ", min |l| " + fmt_num(ab) + "; ";
  }
  const double secs = elapsed_since(t0);
  ok = ok && secs < 180.0;
  return {ok, detail + "runtime " + fmt_num(secs) + " s (limit 180)"};
}

Outcome mms() {
  const MmsTable t = mms_convergence();
  const bool ok = std::abs(t.temporal_order - 1.0) <= 0.2 && std::abs(t.spatial_order - 2.0) <= 0.3;
  return {ok, "temporal order " + fmt_num(t.temporal_order) + " (1.0 +- 0.2), spatial order " +
                  fmt_num(t.spatial_order) + " (2.0 +- 0.3)"};
}

Outcome nonhomogeneous_decay() {
  DecayOptions opt = decay_options();
  opt.h_amplitude = 0.1;
  const DecayResult r = decay_experiment(opt);
  return {r.relative_error <= 0.03, "rate of |div u - h| " + fmt_num(r.rate) + " vs " + fmt_num(r.expected) +
                                        ", relative error " + fmt_num(r.relative_error) + " (tol 0.03)"};
}

Outcome weak_identity() {
  const Grid g = Grid::channel(32, 32);
  RunConfig cfg(g);
  cfg.nu = 0.05;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.u0 = ManufacturedFlow(g.lx(), g.ly(), cfg.nu).normalised(g, 1.0).velocity(g, 0.0);
  cfg.nonhomogeneous = static_divergence(0.1);
  Rng rng(1009);
  std::vector<ScalarField> tests;
  for (int k = 0; k < 20; ++k) tests.push_back(random_scalar(g, rng));

  const TimeStepper ts(cfg);
  StepState s = ts.initial_state();
  double worst = 0.0;
  const long steps = cfg.steps();
  for (long n = 0; n < steps; ++n) {
    StepState next = ts.step(s);
    worst = std::max(worst, weak_divergence_residual(s.u, next.u, s.split.p_gh, cfg.nu, cfg.dt, tests));
    s = std::move(next);
  }
  return {steps == 500 && worst <= 1e-7,
          "max residual " + fmt_num(worst) + " over " + std::to_string(steps) + " steps, 20 tests (tol 1e-7)"};
}

}  // namespace

int main() {
  criterion(1, "domination constant", beta_bound);
  criterion(2, "periodic degenerate case", periodic_identity);
  criterion(3, "projection identities", projection_identities);
  criterion(4, "divergence decay rate", divergence_decay);
  criterion(5, "stability sweep", stability_sweep);
  criterion(6, "spectrum positivity", spectrum_positivity);
  criterion(7, "manufactured convergence", mms);
  criterion(8, "nonhomogeneous dissipation", nonhomogeneous_decay);
  criterion(9, "weak divergence identity", weak_identity);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
