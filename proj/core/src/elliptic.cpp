#include "uncon/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "uncon/errors.hpp"

namespace uncon {

namespace {

bool has_constant_nullspace(LineKind k) {
  return k == LineKind::Periodic || k == LineKind::CellEven;
}

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXd to_eigen(const GridArray& a) {
  return Eigen::Map<const Eigen::VectorXd>(a.values().data(), a.size());
}

void from_eigen(const Eigen::VectorXd& x, GridArray& a) {
  Eigen::Map<Eigen::VectorXd>(a.values().data(), a.size()) = x;
}

}  // namespace

Eigen::MatrixXd second_difference_matrix(int n, double h, LineKind kind) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const double r = 1.0 / (h * h);
  for (int k = 0; k < n; ++k) {
    m(k, k) = -2.0 * r;
    if (k > 0) m(k, k - 1) = r;
    if (k + 1 < n) m(k, k + 1) = r;
  }
  switch (kind) {
    case LineKind::Periodic:
      m(0, n - 1) += r;
      m(n - 1, 0) += r;
      break;
    case LineKind::CellOdd:
      m(0, 0) -= r;
      m(n - 1, n - 1) -= r;
      break;
    case LineKind::CellEven:
      m(0, 0) += r;
      m(n - 1, n - 1) += r;
      break;
    case LineKind::Node:
      break;
  }
  return m;
}

EllipticSolver::EllipticSolver(const Grid& grid, Location loc, EllipticProblem problem,
                               SolverOptions options)
    : grid_(grid),
      loc_(loc),
      problem_(problem),
      options_(options),
      kinds_{},
      singular_(false),
      sign_(1.0),
      shift_(0.0),
      scale_(1.0),
      mx_(grid.extent_x(loc)),
      my_(grid.extent_y(loc)) {
  if (!(options_.tol > 0.0)) throw ValidationError("solver tolerance must be positive");
  if (options_.max_iterations <= 0) options_.max_iterations = 10 * (grid.nx() + grid.ny());

  switch (problem_.kind) {
    case EllipticKind::PoissonNeumann:
      if (loc != Location::Cell)
        throw ValidationError("Neumann Poisson problems are posed on cell-centred data");
      kinds_ = scalar_kinds(grid, ScalarBc::Neumann0);
      sign_ = -1.0;
      break;
    case EllipticKind::PoissonDirichlet:
      kinds_ = loc == Location::Cell ? scalar_kinds(grid, ScalarBc::Dirichlet0)
                                     : velocity_kinds(grid, loc, VelocityBc::NoSlip);
      sign_ = -1.0;
      break;
    case EllipticKind::HelmholtzDirichlet:
      if (!(problem_.alpha >= 0.0)) throw ValidationError("Helmholtz alpha must be >= 0");
      kinds_ = loc == Location::Cell ? scalar_kinds(grid, ScalarBc::Dirichlet0)
                                     : velocity_kinds(grid, loc, VelocityBc::NoSlip);
      shift_ = 1.0;
      scale_ = -problem_.alpha;
      break;
  }
  singular_ = shift_ == 0.0 && has_constant_nullspace(kinds_.x) &&
              has_constant_nullspace(kinds_.y);

  const Eigen::MatrixXd tx = second_difference_matrix(mx_, grid.dx(), kinds_.x);
  const Eigen::MatrixXd ty = second_difference_matrix(my_, grid.dy(), kinds_.y);

  if (options_.preconditioner == Preconditioner::FastDiagonalization) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(tx);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ey(ty);
    vx_ = ex.eigenvectors();
    lx_ = ex.eigenvalues();
    vy_ = ey.eigenvectors();
    ly_ = ey.eigenvalues();
  } else if (options_.preconditioner == Preconditioner::LineRelaxation) {
    std::vector<double> diags;
    line_of_column_.resize(mx_);
    for (int i = 0; i < mx_; ++i) {
      const double d = tx(i, i);
      auto it = std::find_if(diags.begin(), diags.end(),
                             [&](double e) { return std::abs(e - d) <= 1e-12 * std::abs(d); });
      if (it == diags.end()) {
        diags.push_back(d);
        const Eigen::MatrixXd block =
            sign_ * (shift_ * Eigen::MatrixXd::Identity(my_, my_) +
                     scale_ * (ty + d * Eigen::MatrixXd::Identity(my_, my_)));
        line_factors_.emplace_back(block);
        line_of_column_[i] = static_cast<int>(diags.size()) - 1;
      } else {
        line_of_column_[i] = static_cast<int>(it - diags.begin());
      }
    }
  }
}

GridArray EllipticSolver::apply(const GridArray& x) const {
  GridArray lap = laplacian(x, kinds_);
  lap *= scale_;
  if (shift_ != 0.0) lap.axpy(shift_, x);
  return lap;
}

void EllipticSolver::apply_spd(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  GridArray xa(grid_, loc_);
  from_eigen(x, xa);
  y = sign_ * to_eigen(apply(xa));
}

void EllipticSolver::project_null(Eigen::VectorXd& x) const {
  if (singular_) x.array() -= x.mean();
}

void EllipticSolver::precondition(const Eigen::VectorXd& r, Eigen::VectorXd& z) const {
  switch (options_.preconditioner) {
    case Preconditioner::None:
      z = r;
      break;
    case Preconditioner::FastDiagonalization: {
      Eigen::Map<const RowMajor> rm(r.data(), my_, mx_);
      RowMajor hat = vy_.transpose() * rm * vx_;
      double dmax = 0.0;
      for (int j = 0; j < my_; ++j)
        for (int i = 0; i < mx_; ++i)
          dmax = std::max(dmax, std::abs(shift_ + scale_ * (lx_(i) + ly_(j))));
      for (int j = 0; j < my_; ++j) {
        for (int i = 0; i < mx_; ++i) {
          const double d = sign_ * (shift_ + scale_ * (lx_(i) + ly_(j)));
          hat(j, i) = std::abs(d) > 1e-10 * dmax ? hat(j, i) / d : 0.0;
        }
      }
      RowMajor out = vy_ * hat * vx_.transpose();
      z = Eigen::Map<const Eigen::VectorXd>(out.data(), out.size());
      break;
    }
    case Preconditioner::LineRelaxation: {
      z.resize(r.size());
      Eigen::VectorXd line(my_);
      for (int i = 0; i < mx_; ++i) {
        for (int j = 0; j < my_; ++j) line(j) = r(j * mx_ + i);
        line = line_factors_[line_of_column_[i]].solve(line);
        for (int j = 0; j < my_; ++j) z(j * mx_ + i) = line(j);
      }
      break;
    }
  }
  project_null(z);
}

Solution<GridArray> EllipticSolver::solve(const GridArray& rhs) const {
  if (rhs.location() != loc_ || !(rhs.grid() == grid_))
    throw ValidationError("right-hand side does not match the solver's grid/location");

  Eigen::VectorXd b = to_eigen(rhs);
  SolveReport report;
  if (singular_) {
    const double bn = b.norm();
    report.compat_defect = bn > 0.0 ? std::abs(b.sum()) / (std::sqrt(double(b.size())) * bn) : 0.0;
    if (options_.strict_compatibility && report.compat_defect > 1e-8)
      throw IncompatibleRhs(report.compat_defect);
    project_null(b);
  }
  GridArray x_out(grid_, loc_);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return {std::move(x_out), report};

  b *= sign_;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b;
  Eigen::VectorXd z, p, q;
  precondition(r, z);
  p = z;
  double rz = r.dot(z);
  double rel = 1.0;
  int it = 0;
  while (true) {
    if (it >= options_.max_iterations) throw NonConvergence(it, rel);
    ++it;
    apply_spd(p, q);
    const double pq = p.dot(q);
    if (!(pq > 0.0)) break;  // search direction lies in the null space
    const double alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    project_null(r);
    rel = r.norm() / bnorm;
    if (rel <= options_.tol) break;
    precondition(r, z);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  project_null(x);
  from_eigen(x, x_out);

  // independent residual check with the stencil operator
  GridArray resid = apply(x_out);
  GridArray target(grid_, loc_);
  from_eigen(b * sign_, target);
  resid -= target;
  report.iterations = it;
  report.residual = to_eigen(resid).norm() / bnorm;
  if (report.residual > options_.tol * 10.0) throw NonConvergence(it, report.residual);
  return {std::move(x_out), report};
}

Solution<ScalarField> solve(const EllipticProblem& problem, const ScalarField& rhs,
                            SolverOptions options) {
  EllipticSolver solver(rhs.grid(), Location::Cell, problem, options);
  auto sol = solver.solve(rhs.values);
  const bool pinned = problem.kind == EllipticKind::PoissonNeumann || solver.singular();
  return {ScalarField(std::move(sol.value), pinned), sol.report};
}

VectorEllipticSolver::VectorEllipticSolver(const Grid& grid, EllipticProblem problem,
                                           SolverOptions options)
    : u_(grid, Location::XFace, problem, options), v_(grid, Location::YFace, problem, options) {
  if (problem.kind == EllipticKind::PoissonNeumann)
    throw ValidationError("vector solves use Dirichlet (no-slip) walls");
}

Solution<VectorField> VectorEllipticSolver::solve(const VectorField& rhs) const {
  auto su = u_.solve(rhs.u);
  auto sv = v_.solve(rhs.v);
  SolveReport rep;
  rep.iterations = std::max(su.report.iterations, sv.report.iterations);
  rep.residual = std::max(su.report.residual, sv.report.residual);
  rep.compat_defect = std::max(su.report.compat_defect, sv.report.compat_defect);
  return {VectorField(std::move(su.value), std::move(sv.value), VelocityBc::NoSlip), rep};
}

Solution<VectorField> solve_vector(const EllipticProblem& problem, const VectorField& rhs,
                                   SolverOptions options) {
  return VectorEllipticSolver(rhs.grid(), problem, options).solve(rhs);
}

}  // namespace uncon
