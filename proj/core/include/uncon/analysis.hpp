#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "uncon/elliptic.hpp"
#include "uncon/pressure.hpp"
#include "uncon/timestepper.hpp"

namespace uncon {

/// Largest grid edge accepted by dense assembly.
inline constexpr int kDenseCap = 48;

enum class DenseOperator {
  Projection,            ///< a -> P a
  QOp,                   ///< g -> grad div Lap^{-1} g
  StokesPressureGrad,    ///< u -> grad p_S(u)
  UnconstrainedStokesB,  ///< u -> -Lap u + grad p_S(u)
  VectorLaplacian,       ///< u -> Lap u (no-slip)
};

/// Matrix-free application of one of the operators above.
VectorField apply_operator(DenseOperator op, const PressureSolver& solver, const VectorField& w);

/// Column-by-column assembly on the flattened velocity unknowns (u then v;
/// wall-normal faces are not unknowns, so no-slip is already eliminated).
/// Throws GridTooLarge beyond kDenseCap in either direction.
Eigen::MatrixXd assemble_dense(DenseOperator op, const Grid& grid, SolverOptions options = {});

enum class BetaMethod { Dense, Lanczos };

struct BetaOptions {
  BetaMethod method = BetaMethod::Dense;
  std::vector<double> c_values = {0.0, 1.0, 10.0, 1e2, 1e3, 1e4};
  double eig_tol = 1e-10;   ///< Lanczos residual tolerance (relative)
  int max_iterations = 400;  ///< Lanczos Krylov dimension cap
  std::uint64_t seed = 20240601;
  SolverOptions solver;
};

/// sup over no-slip u of (|grad p_S|^2 - c |grad u|^2) / |Lap u|^2 for each c.
struct BetaEstimate {
  int nx = 0;
  int ny = 0;
  std::vector<double> c_values;
  std::vector<double> sup_ratio;
  std::vector<std::vector<double>> top_eigenvalues;  ///< three largest per c, descending
  double beta_emp = 0.0;  ///< max(0, min_c sup_ratio)
  int iterations = 0;     ///< total Krylov steps (0 on the dense path)
};

BetaEstimate beta_estimate(const Grid& grid, const BetaOptions& options = {});

struct SpectrumReport {
  int nx = 0;
  int ny = 0;
  std::vector<std::complex<double>> eigenvalues;  ///< ascending real part
  double min_real_part = 0.0;
  double min_abs = 0.0;
  double dirichlet_min = 0.0;  ///< smallest eigenvalue of -Lap (no-slip, vector)
  double neumann_min = 0.0;    ///< smallest nonzero eigenvalue of -Lap (Neumann, scalar)
  double length_scale_sq = 1.0;  ///< ly^2, used to nondimensionalise eigenvalues
};

SpectrumReport spectrum(const Grid& grid, SolverOptions options = {});

/// Smallest eigenvalues of the separable 5-point Laplacians from their 1-D factors.
double dirichlet_laplacian_min(const Grid& grid);
double neumann_laplacian_min_nonzero(const Grid& grid);

struct MmsRow {
  int n = 0;
  double dt = 0.0;
  double error = 0.0;
};

struct MmsOptions {
  std::vector<int> resolutions = {16, 32, 64};
  double nu = 1.0;
  double steady_dt = 0.5;       ///< pseudo-time step for reaching the discrete steady state
  double steady_tol = 1e-13;    ///< stop when max |u^{n+1} - u^n| <= steady_tol * max |u|
  int steady_max_steps = 2000;
  int temporal_n = 32;
  std::vector<double> dts = {0.04, 0.02, 0.01, 0.005};
  double t_end = 0.4;
  SolverOptions solver;
};

struct MmsTable {
  std::vector<MmsRow> spatial;   ///< |u_h - u*| at the discrete steady state
  double spatial_order = 0.0;
  std::vector<MmsRow> temporal;  ///< |u_dt - u_{dt/2}| at t_end (row dt = coarser step)
  double temporal_order = 0.0;
  std::vector<MmsRow> temporal_exact;  ///< |u_dt - u*(t_end)| for reference
};

MmsTable mms_convergence(const MmsOptions& options = {});

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

enum class DecayQuantity { DivNorm, Energy, GradNormSq, LapNormSq, StokesGradSq };

/// Decay rate r of q(t) ~ exp(-r t) from a log-linear least-squares fit over
/// the tail half. Throws DegenerateSeries on short series or when q drops to `floor`.
double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& q,
                      double floor = 1e-10);
double decay_fit(const std::vector<DiagnosticsRecord>& series, DecayQuantity quantity,
                 double floor = 1e-10);

struct DecayOptions {
  int nx = 128;
  int ny = 128;
  double nu = 0.1;
  double lx = 1.0;
  double ly = 1.0;
  double dt = 1e-3;
  double t_end = 1.0;
  double h_amplitude = 0.0;  ///< nonzero: static h = amplitude cos(2 pi x / lx)
  bool advection = true;
  SolverOptions solver;
};

struct DecayResult {
  double rate = 0.0;
  double expected = 0.0;  ///< nu pi^2 / ly^2
  double relative_error = 0.0;
  RunResult run;
};

/// Initial velocity (0, (ly/pi) sin(pi y/ly)) whose divergence is cos(pi y/ly).
VectorField divergence_mode(const Grid& grid);
/// Static divergence h = amplitude cos(2 pi x / lx).
NonhomogeneousData static_divergence(double amplitude);
DecayResult decay_experiment(const DecayOptions& options = {});

}  // namespace uncon
