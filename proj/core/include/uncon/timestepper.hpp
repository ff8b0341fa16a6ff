#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uncon/elliptic.hpp"
#include "uncon/field.hpp"
#include "uncon/pressure.hpp"

namespace uncon {

/// Time-dependent body force f(t). An empty function means f = 0.
struct ForcingSpec {
  std::function<VectorField(const Grid&, double)> field;
  /// Replace the midpoint sample by a 5-point Gauss-Legendre interval average.
  bool exact_average = false;

  static ForcingSpec none() { return {}; }
  static ForcingSpec constant(double fx, double fy);
};

/// Interval average f^n of f over [n dt, (n+1) dt].
VectorField forcing_average(const ForcingSpec& spec, const Grid& grid, long n, double dt);

/// Prescribed divergence h(t) and wall-normal boundary rate for the
/// nonhomogeneous variant. Empty functions are read as zero.
struct NonhomogeneousData {
  std::function<ScalarField(const Grid&, double)> h;
  std::function<ScalarField(const Grid&, double)> dt_h;
  std::function<WallNormalRate(const Grid&, double)> dt_g_normal;

  ScalarField h_at(const Grid& grid, double t) const;
  ScalarField dt_h_at(const Grid& grid, double t) const;
  WallNormalRate rate_at(const Grid& grid, double t) const;
};

struct RunConfig {
  explicit RunConfig(const Grid& g) : grid(g), u0(g) {}

  Grid grid;
  double nu = 1.0;
  double dt = 1e-3;
  double t_end = 1.0;
  ForcingSpec forcing;
  VectorField u0;
  bool smooth_init = false;  ///< replace u0 by (I - dt Lap)^{-1} u0
  bool advection = true;     ///< false drops u . grad u (linear Stokes regime)
  std::optional<NonhomogeneousData> nonhomogeneous;
  SolverOptions solver;
  double blowup_threshold = 1e12;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
  long steps() const;
};

struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double energy = 0.0;          ///< |u|^2 / 2
  double grad_norm_sq = 0.0;    ///< |grad u|^2
  double lap_norm_sq = 0.0;     ///< |Lap u|^2
  double div_norm_sq = 0.0;     ///< |div u - h|^2
  double stokes_grad_sq = 0.0;  ///< |grad p_S|^2
  /// <w^{n+1} - w^n, w^{n+1}>/dt + nu |grad w^{n+1}|^2 with w = div u - h; zero at step 0.
  double dissipation_residual = 0.0;
};

struct StepState {
  explicit StepState(const Grid& grid) : u(grid), split(grid) {}

  long n = 0;
  double t = 0.0;
  VectorField u;
  PressureSplit split;  ///< pressures evaluated at u^n and the interval n forcing
  DiagnosticsRecord diagnostics;
};

struct StabilityAggregates {
  double sup_grad_sq = 0.0;     ///< sup_k |grad u^k|^2
  double sum_lap_sq_dt = 0.0;   ///< sum_k |Lap u^k|^2 dt, k >= 1
  double sum_rate_sq_dt = 0.0;  ///< sum_k |(u^{k+1} - u^k)/dt|^2 dt
  double sum_adv_sq_dt = 0.0;   ///< sum_k |u^k . grad u^k|^2 dt
};

struct RunResult {
  std::vector<DiagnosticsRecord> series;
  StepState final_state;
  StabilityAggregates aggregates;
};

/// Velocity update (I - nu dt Lap) u^{n+1} = u^n + dt (f^n - u.grad u - grad p_E - nu grad p_S - grad p_gh).
/// Owns the factorised solvers for one RunConfig.
class TimeStepper {
 public:
  explicit TimeStepper(RunConfig cfg);

  const RunConfig& config() const noexcept { return cfg_; }
  const PressureSolver& pressure() const noexcept { return pressure_; }

  /// State 0, after optional smoothing of u0.
  StepState initial_state() const;
  StepState step(const StepState& state) const;
  /// Builds a state at (n, t) for velocity u, evaluating its pressures and diagnostics.
  StepState make_state(long n, VectorField u) const;

 private:
  RunConfig cfg_;
  PressureSolver pressure_;
  VectorEllipticSolver implicit_;
};

/// (I - dt Lap) u0 = u_in.
VectorField smooth_initial(const VectorField& u_in, double dt, SolverOptions options = {});

/// One step with freshly factorised solvers.
StepState step(const StepState& state, const RunConfig& cfg);

/// Iterates to t_end. The observer, when set, sees every state including state 0.
/// Throws Blowup with the offending step index.
RunResult run(const RunConfig& cfg, const std::function<void(const StepState&)>& observer = {});

/// Residual of the discrete weak divergence identity for one step,
///   <u1 - u0, grad phi> = nu dt (<Lap (u1 - u0), grad phi> + <grad div u0, grad phi>)
///                         - dt <grad p_gh, grad phi>,
/// maximised over the test functions and divided by the summed magnitudes of its terms.
double weak_divergence_residual(const VectorField& u0, const VectorField& u1,
                                const ScalarField& p_gh, double nu, double dt,
                                const std::vector<ScalarField>& tests);

}  // namespace uncon
