#include "uncon/timestepper.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "uncon/errors.hpp"
#include "uncon/operators.hpp"

namespace uncon {

ForcingSpec ForcingSpec::constant(double fx, double fy) {
  ForcingSpec s;
  s.field = [fx, fy](const Grid& g, double) {
    return VectorField::sample(
        g, [fx](double, double) { return fx; }, [fy](double, double) { return fy; });
  };
  return s;
}

VectorField forcing_average(const ForcingSpec& spec, const Grid& grid, long n, double dt) {
  if (!spec.field) return VectorField(grid);
  const double t0 = static_cast<double>(n) * dt;
  if (!spec.exact_average) return spec.field(grid, t0 + 0.5 * dt);

  // 5-point Gauss-Legendre on [t0, t0 + dt]
  static constexpr std::array<double, 5> node = {
      -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr std::array<double, 5> weight = {
      0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
      0.2369268850561891};
  VectorField avg(grid);
  for (std::size_t q = 0; q < node.size(); ++q)
    avg.axpy(0.5 * weight[q], spec.field(grid, t0 + 0.5 * dt * (1.0 + node[q])));
  return avg;
}

ScalarField NonhomogeneousData::h_at(const Grid& grid, double t) const {
  return h ? h(grid, t) : ScalarField(grid);
}
ScalarField NonhomogeneousData::dt_h_at(const Grid& grid, double t) const {
  return dt_h ? dt_h(grid, t) : ScalarField(grid);
}
WallNormalRate NonhomogeneousData::rate_at(const Grid& grid, double t) const {
  return dt_g_normal ? dt_g_normal(grid, t) : WallNormalRate::zero(grid);
}

void RunConfig::validate() const {
  if (!(nu > 0.0)) throw ValidationError("nu must be positive");
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
  if (dt > t_end * (1.0 + 1e-12)) throw ValidationError("dt must not exceed t_end");
  if (!(u0.grid() == grid)) throw ValidationError("initial velocity lives on a different grid");
  if (u0.bc != VelocityBc::NoSlip) throw ValidationError("initial velocity must be no-slip");
  if (!(blowup_threshold > 0.0)) throw ValidationError("blowup threshold must be positive");
}

long RunConfig::steps() const { return std::lround(std::ceil(t_end / dt - 1e-9)); }

TimeStepper::TimeStepper(RunConfig cfg)
    : cfg_((cfg.validate(), std::move(cfg))),
      pressure_(cfg_.grid, cfg_.solver),
      implicit_(cfg_.grid, EllipticProblem::helmholtz(cfg_.nu * cfg_.dt), cfg_.solver) {}

namespace {

double sq(double x) { return x * x; }

}  // namespace

StepState TimeStepper::make_state(long n, VectorField u) const {
  const Grid& g = cfg_.grid;
  const double t = static_cast<double>(n) * cfg_.dt;
  StepState s(g);
  s.n = n;
  s.t = t;

  VectorField f = forcing_average(cfg_.forcing, g, n, cfg_.dt);
  if (cfg_.advection) f -= advect(u);
  PressureGradient pe = pressure_.gradient_part(f);
  PressureGradient ps = pressure_.stokes_pressure(u);
  s.split.p_euler = std::move(pe.p);
  s.split.p_stokes = std::move(ps.p);

  ScalarField w = div(u);
  if (cfg_.nonhomogeneous) {
    const auto& nh = *cfg_.nonhomogeneous;
    s.split.p_gh = pressure_.nonhomogeneous_pressure(nh.rate_at(g, t), nh.h_at(g, t),
                                                     nh.dt_h_at(g, t), cfg_.nu);
    w.values -= nh.h_at(g, t).values;
  }
  s.split.p_euler.pin_mean();
  s.split.p_stokes.pin_mean();
  s.split.p_gh.pin_mean();

  const Norms nm = norms(u);
  DiagnosticsRecord& d = s.diagnostics;
  d.step = n;
  d.t = t;
  d.energy = 0.5 * sq(nm.l2);
  d.grad_norm_sq = sq(nm.h1_semi);
  d.lap_norm_sq = sq(nm.lap_l2);
  d.div_norm_sq = inner(w, w);
  d.stokes_grad_sq = inner(ps.grad_p, ps.grad_p);
  s.u = std::move(u);
  return s;
}

StepState TimeStepper::initial_state() const {
  VectorField u0 = cfg_.u0;
  if (cfg_.smooth_init) u0 = smooth_initial(u0, cfg_.dt, cfg_.solver);
  return make_state(0, std::move(u0));
}

StepState TimeStepper::step(const StepState& s) const {
  const Grid& g = cfg_.grid;
  const double dt = cfg_.dt;
  const double nu = cfg_.nu;

  VectorField rhs = s.u;
  VectorField drive = forcing_average(cfg_.forcing, g, s.n, dt);
  if (cfg_.advection) drive -= advect(s.u);
  drive -= grad(s.split.p_euler);
  drive.axpy(-nu, grad(s.split.p_stokes));
  if (cfg_.nonhomogeneous) drive -= grad(s.split.p_gh);
  rhs.axpy(dt, drive);

  VectorField u1 = implicit_.solve(rhs).value;
  const double gnorm = norms(u1).h1_semi;
  if (!std::isfinite(gnorm) || gnorm > cfg_.blowup_threshold) throw Blowup(s.n + 1, gnorm);

  // w = div u - h before and after the step, for the heat-energy residual
  ScalarField w0 = div(s.u);
  ScalarField w1 = div(u1);
  if (cfg_.nonhomogeneous) {
    w0.values -= cfg_.nonhomogeneous->h_at(g, s.t).values;
    w1.values -= cfg_.nonhomogeneous->h_at(g, s.t + dt).values;
  }

  StepState next = make_state(s.n + 1, std::move(u1));
  const VectorField gw = grad(w1);
  ScalarField dw(w1.values - w0.values);
  next.diagnostics.dissipation_residual = inner(dw, w1) / dt + nu * inner(gw, gw);
  return next;
}

VectorField smooth_initial(const VectorField& u_in, double dt, SolverOptions options) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  return solve_vector(EllipticProblem::helmholtz(dt), u_in, options).value;
}

StepState step(const StepState& state, const RunConfig& cfg) {
  return TimeStepper(cfg).step(state);
}

RunResult run(const RunConfig& cfg, const std::function<void(const StepState&)>& observer) {
  TimeStepper stepper(cfg);
  const long nsteps = cfg.steps();
  StepState s = stepper.initial_state();
  RunResult out{{}, s, {}};
  out.series.reserve(static_cast<std::size_t>(nsteps) + 1);
  out.series.push_back(s.diagnostics);
  out.aggregates.sup_grad_sq = s.diagnostics.grad_norm_sq;
  if (observer) observer(s);

  for (long n = 0; n < nsteps; ++n) {
    if (cfg.advection) {
      const VectorField a = advect(s.u);
      out.aggregates.sum_adv_sq_dt += inner(a, a) * cfg.dt;
    }
    StepState next = stepper.step(s);
    const VectorField du = next.u - s.u;
    out.aggregates.sum_rate_sq_dt += inner(du, du) / cfg.dt;
    out.aggregates.sum_lap_sq_dt += next.diagnostics.lap_norm_sq * cfg.dt;
    out.aggregates.sup_grad_sq = std::max(out.aggregates.sup_grad_sq, next.diagnostics.grad_norm_sq);
    out.series.push_back(next.diagnostics);
    if (observer) observer(next);
    s = std::move(next);
  }
  out.final_state = std::move(s);
  return out;
}

double weak_divergence_residual(const VectorField& u0, const VectorField& u1,
                                const ScalarField& p_gh, double nu, double dt,
                                const std::vector<ScalarField>& tests) {
  const VectorField du = u1 - u0;
  const VectorField lap_du = laplacian(du);
  const VectorField gdu = grad(div(u0));
  const VectorField gp = grad(p_gh);
  const double n_du = norm(du), n_lap = norm(lap_du), n_gdu = norm(gdu), n_gp = norm(gp);
  double worst = 0.0;
  for (const ScalarField& phi : tests) {
    const VectorField gphi = grad(phi);
    const double lhs = inner(du, gphi);
    const double rhs = nu * dt * (inner(lap_du, gphi) + inner(gdu, gphi)) - dt * inner(gp, gphi);
    const double scale = norm(gphi) * (n_du + nu * dt * (n_lap + n_gdu) + dt * n_gp);
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace uncon
