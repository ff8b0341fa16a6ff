#pragma once

#include <vector>

#include "uncon/elliptic.hpp"
#include "uncon/field.hpp"

namespace uncon {

/// Result of the discrete Helmholtz projection P a = a + grad q.
struct Projection {
  VectorField pa;
  ScalarField q;  ///< mean-pinned potential
  SolveReport report;
};

/// A mean-pinned pressure potential together with its discrete gradient.
struct PressureGradient {
  ScalarField p;
  VectorField grad_p;
};

/// Components of the total pressure p = p_E + nu p_S + p_gh.
struct PressureSplit {
  explicit PressureSplit(const Grid& grid) : p_euler(grid), p_stokes(grid), p_gh(grid) {}

  ScalarField total(double nu) const;

  ScalarField p_euler;
  ScalarField p_stokes;
  ScalarField p_gh;  ///< zero in the homogeneous case
};

/// Time derivative of the wall-normal boundary velocity, one value per wall
/// cell face (outward normal). Walls absent from the topology stay empty.
struct WallNormalRate {
  std::vector<double> bottom;
  std::vector<double> top;
  std::vector<double> left;
  std::vector<double> right;

  static WallNormalRate zero(const Grid& grid);
};

/// Advective-form (u . grad) u with centred differences, evaluated at the
/// velocity's own staggered points.
VectorField advect(const VectorField& u);

/// Owns the factorised solvers behind the pressure decomposition so repeated
/// calls (time stepping, dense assembly) avoid refactoring. All methods are
/// const and safe to call concurrently.
class PressureSolver {
 public:
  explicit PressureSolver(const Grid& grid, SolverOptions options = {});

  const Grid& grid() const noexcept { return grid_; }

  /// Discrete Helmholtz projection: q solves the Neumann problem Lap q = -div a.
  Projection project(const VectorField& a) const;

  /// (I - P) a as a gradient: returns the potential phi with (I - P) a = grad phi.
  PressureGradient gradient_part(const VectorField& a) const;

  /// Q g = grad div Lap^{-1} g with the componentwise Dirichlet inverse.
  VectorField q_operator(const VectorField& g) const;

  /// Dirichlet vector Laplacian inverse (no-slip walls).
  VectorField inverse_laplacian(const VectorField& g) const;

  /// grad p_S = (I - P)(Lap u - grad div u).
  PressureGradient stokes_pressure(const VectorField& u) const;

  /// grad p_E = (P - I)(u . grad u - f).
  PressureGradient euler_pressure(const VectorField& u, const VectorField& f) const;

  /// Weak Neumann problem
  ///   <grad p, grad phi> = -<dt(n.g), phi>_wall + <dt h, phi> + nu <grad h, grad phi>.
  /// Throws IncompatibleData when the boundary flux and dt h do not balance.
  ScalarField nonhomogeneous_pressure(const WallNormalRate& dt_g_normal, const ScalarField& h,
                                      const ScalarField& dt_h, double nu) const;

 private:
  Grid grid_;
  EllipticSolver neumann_;
  VectorEllipticSolver dirichlet_;
};

// One-shot convenience wrappers (factor a fresh solver per call).
Projection helmholtz_project(const VectorField& a, SolverOptions options = {});
VectorField q_operator(const VectorField& g, SolverOptions options = {});
PressureGradient stokes_pressure(const VectorField& u, SolverOptions options = {});
PressureGradient euler_pressure(const VectorField& u, const VectorField& f,
                                SolverOptions options = {});
ScalarField nonhomogeneous_pressure(const WallNormalRate& dt_g_normal, const ScalarField& h,
                                    const ScalarField& dt_h, double nu,
                                    SolverOptions options = {});

}  // namespace uncon
