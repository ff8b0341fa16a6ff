#pragma once

#include <vector>

#include <Eigen/Dense>

#include "uncon/field.hpp"
#include "uncon/operators.hpp"

namespace uncon {

enum class EllipticKind {
  PoissonDirichlet,    ///< Lap x = b, homogeneous Dirichlet walls
  PoissonNeumann,      ///< Lap x = b, homogeneous Neumann walls, mean-zero x
  HelmholtzDirichlet,  ///< (I - alpha Lap) x = b, homogeneous Dirichlet walls
};

struct EllipticProblem {
  EllipticKind kind = EllipticKind::PoissonDirichlet;
  double alpha = 0.0;  ///< HelmholtzDirichlet only

  static EllipticProblem poisson_dirichlet() { return {EllipticKind::PoissonDirichlet, 0.0}; }
  static EllipticProblem poisson_neumann() { return {EllipticKind::PoissonNeumann, 0.0}; }
  static EllipticProblem helmholtz(double alpha) {
    return {EllipticKind::HelmholtzDirichlet, alpha};
  }
};

enum class Preconditioner {
  FastDiagonalization,  ///< exact separable inverse from 1-D eigendecompositions
  LineRelaxation,       ///< block Jacobi on y-lines
  None,
};

struct SolverOptions {
  double tol = 1e-10;      ///< relative residual target
  int max_iterations = 0;  ///< 0 selects 10 * (nx + ny)
  Preconditioner preconditioner = Preconditioner::FastDiagonalization;
  /// Throw IncompatibleRhs instead of projecting when a Neumann rhs has a
  /// relative mean defect above 1e-8.
  bool strict_compatibility = false;
};

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;       ///< |A x - b| / |b| re-measured with the stencil operator
  double compat_defect = 0.0;  ///< |sum b| / (sqrt(N) |b|) before projection (singular problems)
};

template <class T>
struct Solution {
  T value;
  SolveReport report;
};

/// Preconditioned conjugate gradients for one constant-coefficient elliptic
/// operator on one staggered location. Construction factors the 1-D
/// operators once; `solve` is const and may be called concurrently.
class EllipticSolver {
 public:
  EllipticSolver(const Grid& grid, Location loc, EllipticProblem problem,
                 SolverOptions options = {});

  Solution<GridArray> solve(const GridArray& rhs) const;

  /// Applies the (unsigned) operator A to x using the stencil.
  GridArray apply(const GridArray& x) const;

  bool singular() const noexcept { return singular_; }
  const Grid& grid() const noexcept { return grid_; }
  Location location() const noexcept { return loc_; }
  const EllipticProblem& problem() const noexcept { return problem_; }
  const SolverOptions& options() const noexcept { return options_; }

 private:
  void precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const;
  void apply_spd(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  void project_null(Eigen::VectorXd& x) const;

  Grid grid_;
  Location loc_;
  EllipticProblem problem_;
  SolverOptions options_;
  StencilKinds kinds_;
  bool singular_;
  double sign_;   // A_spd = sign_ * A
  double shift_;  // A = shift_ I + scale_ Lap
  double scale_;
  int mx_;
  int my_;

  // fast diagonalisation
  Eigen::MatrixXd vx_, vy_;
  Eigen::VectorXd lx_, ly_;
  // line relaxation: one factorisation per distinct x-diagonal value
  std::vector<Eigen::LLT<Eigen::MatrixXd>> line_factors_;
  std::vector<int> line_of_column_;
};

/// Dense 1-D second-difference matrix (including the 1/h^2 factor).
Eigen::MatrixXd second_difference_matrix(int n, double h, LineKind kind);

/// One-shot scalar solve on cell-centred data.
Solution<ScalarField> solve(const EllipticProblem& problem, const ScalarField& rhs,
                            SolverOptions options = {});

/// Componentwise solve with homogeneous Dirichlet (no-slip) walls.
Solution<VectorField> solve_vector(const EllipticProblem& problem, const VectorField& rhs,
                                   SolverOptions options = {});

/// Pair of component solvers for repeated vector solves.
class VectorEllipticSolver {
 public:
  VectorEllipticSolver(const Grid& grid, EllipticProblem problem, SolverOptions options = {});
  Solution<VectorField> solve(const VectorField& rhs) const;

 private:
  EllipticSolver u_;
  EllipticSolver v_;
};

}  // namespace uncon
