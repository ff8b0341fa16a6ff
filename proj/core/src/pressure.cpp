#include "uncon/pressure.hpp"

#include <cmath>

#include "uncon/errors.hpp"
#include "uncon/operators.hpp"

namespace uncon {

namespace {

int wrap(int k, int n) { return (k % n + n) % n; }

}  // namespace

ScalarField PressureSplit::total(double nu) const {
  ScalarField p(p_euler.values + nu * p_stokes.values + p_gh.values);
  p.pin_mean();
  return p;
}

WallNormalRate WallNormalRate::zero(const Grid& grid) {
  WallNormalRate w;
  if (!grid.periodic_y()) {
    w.bottom.assign(grid.nx(), 0.0);
    w.top.assign(grid.nx(), 0.0);
  }
  if (!grid.periodic_x()) {
    w.left.assign(grid.ny(), 0.0);
    w.right.assign(grid.ny(), 0.0);
  }
  return w;
}

VectorField advect(const VectorField& w) {
  const Grid& g = w.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  const bool px = g.periodic_x();
  const bool py = g.periodic_y();
  const double dx = g.dx();
  const double dy = g.dy();
  const double ghost_sign = w.bc == VelocityBc::NoSlip ? -1.0 : 1.0;

  // u by global x-face index f (0..nx) and cell row j (ghost rows via bc)
  auto u_at = [&](int f, int j) -> double {
    if (!py && (j < 0 || j >= ny)) {
      const int jj = j < 0 ? 0 : ny - 1;
      return ghost_sign * (px ? w.u(wrap(f, nx), jj) : (f <= 0 || f >= nx ? 0.0 : w.u(f - 1, jj)));
    }
    const int jj = wrap(j, ny);
    if (px) return w.u(wrap(f, nx), jj);
    return (f <= 0 || f >= nx) ? 0.0 : w.u(f - 1, jj);
  };
  // v by cell column i (ghost columns via bc) and global y-face index f
  auto v_at = [&](int i, int f) -> double {
    if (!px && (i < 0 || i >= nx)) {
      const int ii = i < 0 ? 0 : nx - 1;
      return ghost_sign * (py ? w.v(ii, wrap(f, ny)) : (f <= 0 || f >= ny ? 0.0 : w.v(ii, f - 1)));
    }
    const int ii = wrap(i, nx);
    if (py) return w.v(ii, wrap(f, ny));
    return (f <= 0 || f >= ny) ? 0.0 : w.v(ii, f - 1);
  };

  VectorField out(g, w.bc);
  const int ox = px ? 0 : 1;
  const int oy = py ? 0 : 1;
  for (int j = 0; j < out.u.ny(); ++j) {
    for (int a = 0; a < out.u.nx(); ++a) {
      const int f = a + ox;
      const double uu = u_at(f, j);
      const double dudx = (u_at(f + 1, j) - u_at(f - 1, j)) / (2.0 * dx);
      const double dudy = (u_at(f, j + 1) - u_at(f, j - 1)) / (2.0 * dy);
      const double vbar =
          0.25 * (v_at(f - 1, j) + v_at(f, j) + v_at(f - 1, j + 1) + v_at(f, j + 1));
      out.u(a, j) = uu * dudx + vbar * dudy;
    }
  }
  for (int b = 0; b < out.v.ny(); ++b) {
    const int f = b + oy;
    for (int i = 0; i < out.v.nx(); ++i) {
      const double vv = v_at(i, f);
      const double dvdx = (v_at(i + 1, f) - v_at(i - 1, f)) / (2.0 * dx);
      const double dvdy = (v_at(i, f + 1) - v_at(i, f - 1)) / (2.0 * dy);
      const double ubar =
          0.25 * (u_at(i, f - 1) + u_at(i + 1, f - 1) + u_at(i, f) + u_at(i + 1, f));
      out.v(i, b) = ubar * dvdx + vv * dvdy;
    }
  }
  return out;
}

PressureSolver::PressureSolver(const Grid& grid, SolverOptions options)
    : grid_(grid),
      neumann_(grid, Location::Cell, EllipticProblem::poisson_neumann(), options),
      dirichlet_(grid, EllipticProblem::poisson_dirichlet(), options) {}

Projection PressureSolver::project(const VectorField& a) const {
  if (!(a.grid() == grid_)) throw ValidationError("field does not live on the solver's grid");
  ScalarField rhs = div(a);
  rhs.values *= -1.0;
  auto sol = neumann_.solve(rhs.values);
  ScalarField q(std::move(sol.value), true);
  VectorField pa = a + grad(q);
  pa.bc = a.bc;
  return {std::move(pa), std::move(q), sol.report};
}

PressureGradient PressureSolver::gradient_part(const VectorField& a) const {
  Projection pr = project(a);
  pr.q.values *= -1.0;
  VectorField g = grad(pr.q);
  return {std::move(pr.q), std::move(g)};
}

VectorField PressureSolver::inverse_laplacian(const VectorField& g) const {
  return dirichlet_.solve(g).value;
}

VectorField PressureSolver::q_operator(const VectorField& g) const {
  return grad(div(inverse_laplacian(g)));
}

PressureGradient PressureSolver::stokes_pressure(const VectorField& u) const {
  VectorField a = laplacian(u);
  a -= grad(div(u));
  return gradient_part(a);
}

PressureGradient PressureSolver::euler_pressure(const VectorField& u, const VectorField& f) const {
  VectorField a = f - advect(u);
  return gradient_part(a);
}

ScalarField PressureSolver::nonhomogeneous_pressure(const WallNormalRate& rate,
                                                    const ScalarField& h, const ScalarField& dt_h,
                                                    double nu) const {
  const double dx = grid_.dx();
  const double dy = grid_.dy();
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  auto check_len = [](const std::vector<double>& v, int n, const char* name) {
    if (!v.empty() && static_cast<int>(v.size()) != n)
      throw ValidationError(std::string("wall data '") + name + "' has the wrong length");
  };
  check_len(rate.bottom, nx, "bottom");
  check_len(rate.top, nx, "top");
  check_len(rate.left, ny, "left");
  check_len(rate.right, ny, "right");
  if (grid_.periodic_y() && (!rate.bottom.empty() || !rate.top.empty()))
    throw ValidationError("wall data given for a periodic direction");
  if (grid_.periodic_x() && (!rate.left.empty() || !rate.right.empty()))
    throw ValidationError("wall data given for a periodic direction");

  // boundary flux as a volume density in the wall-adjacent cells
  ScalarField boundary(grid_);
  double flux = 0.0;
  double scale = 0.0;
  for (int i = 0; i < static_cast<int>(rate.bottom.size()); ++i) {
    boundary(i, 0) += rate.bottom[i] / dy;
    flux += rate.bottom[i] * dx;
    scale += std::abs(rate.bottom[i]) * dx;
  }
  for (int i = 0; i < static_cast<int>(rate.top.size()); ++i) {
    boundary(i, ny - 1) += rate.top[i] / dy;
    flux += rate.top[i] * dx;
    scale += std::abs(rate.top[i]) * dx;
  }
  for (int j = 0; j < static_cast<int>(rate.left.size()); ++j) {
    boundary(0, j) += rate.left[j] / dx;
    flux += rate.left[j] * dy;
    scale += std::abs(rate.left[j]) * dy;
  }
  for (int j = 0; j < static_cast<int>(rate.right.size()); ++j) {
    boundary(nx - 1, j) += rate.right[j] / dx;
    flux += rate.right[j] * dy;
    scale += std::abs(rate.right[j]) * dy;
  }
  double source = 0.0;
  for (double x : dt_h.values.values()) {
    source += x * grid_.cell_area();
    scale += std::abs(x) * grid_.cell_area();
  }
  const double defect = scale > 0.0 ? std::abs(flux - source) / scale : 0.0;
  if (defect > 1e-8) throw IncompatibleData(defect);

  // Lap p = b_wall - dt h + nu Lap_N h
  GridArray rhs = boundary.values - dt_h.values;
  rhs.axpy(nu, laplacian(h, ScalarBc::Neumann0).values);
  auto sol = neumann_.solve(rhs);
  return ScalarField(std::move(sol.value), true);
}

Projection helmholtz_project(const VectorField& a, SolverOptions options) {
  return PressureSolver(a.grid(), options).project(a);
}

VectorField q_operator(const VectorField& g, SolverOptions options) {
  return PressureSolver(g.grid(), options).q_operator(g);
}

PressureGradient stokes_pressure(const VectorField& u, SolverOptions options) {
  return PressureSolver(u.grid(), options).stokes_pressure(u);
}

PressureGradient euler_pressure(const VectorField& u, const VectorField& f,
                                SolverOptions options) {
  return PressureSolver(u.grid(), options).euler_pressure(u, f);
}

ScalarField nonhomogeneous_pressure(const WallNormalRate& dt_g_normal, const ScalarField& h,
                                    const ScalarField& dt_h, double nu, SolverOptions options) {
  return PressureSolver(h.grid(), options).nonhomogeneous_pressure(dt_g_normal, h, dt_h, nu);
}

}  // namespace uncon
