#pragma once

#include <vector>

#include "uncon/field.hpp"

namespace uncon {

/// Boundary treatment of a 1-D second-difference line.
enum class LineKind {
  Periodic,  ///< wrap-around
  CellOdd,   ///< cell-centred samples, ghost = -nearest (homogeneous Dirichlet)
  CellEven,  ///< cell-centred samples, ghost = +nearest (homogeneous Neumann)
  Node,      ///< samples strictly between wall nodes that hold zero
};

struct StencilKinds {
  LineKind x;
  LineKind y;
};

StencilKinds scalar_kinds(const Grid& grid, ScalarBc bc);
StencilKinds velocity_kinds(const Grid& grid, Location component, VelocityBc bc);

/// Discrete gradient, cells -> interior faces. Centred (second order) at the faces.
VectorField grad(const ScalarField& p);

/// Discrete divergence, faces -> cells. Exactly the negative adjoint of grad.
ScalarField div(const VectorField& w);

/// Five-point Laplacian with ghost values fixed by `kinds`.
GridArray laplacian(const GridArray& a, StencilKinds kinds);
ScalarField laplacian(const ScalarField& p, ScalarBc bc);
/// Componentwise vector Laplacian; tangential ghosts follow `w.bc`.
VectorField laplacian(const VectorField& w);

/// Velocity (d psi/dy, -d psi/dx) of a stream function sampled at grid nodes.
/// The result is discretely divergence-free whenever psi is constant along each wall.
template <class F>
VectorField curl_of_stream(const Grid& grid, F&& psi, VelocityBc bc = VelocityBc::NoSlip) {
  VectorField w(grid, bc);
  const double dx = grid.dx();
  const double dy = grid.dy();
  for (int j = 0; j < w.u.ny(); ++j) {
    for (int i = 0; i < w.u.nx(); ++i) {
      const double x = grid.x_at(Location::XFace, i);
      w.u(i, j) = (psi(x, (j + 1) * dy) - psi(x, j * dy)) / dy;
    }
  }
  for (int j = 0; j < w.v.ny(); ++j) {
    for (int i = 0; i < w.v.nx(); ++i) {
      const double y = grid.y_at(Location::YFace, j);
      w.v(i, j) = -(psi((i + 1) * dx, y) - psi(i * dx, y)) / dx;
    }
  }
  return w;
}

/// Midpoint-rule L2 inner products (every stored sample weighs dx*dy).
double inner(const GridArray& a, const GridArray& b);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double norm(const ScalarField& a);
double norm(const VectorField& a);

struct Norms {
  double l2 = 0.0;       ///< |u|
  double h1_semi = 0.0;  ///< |grad u| = sqrt(-<u, Lap u>)
  double lap_l2 = 0.0;   ///< |Lap u|
};

Norms norms(const VectorField& u);

enum class Wall { Bottom, Top, Left, Right };

/// Outward normal derivative of a cell-centred scalar on one wall, from a
/// one-sided second-order stencil through the three nearest cells.
std::vector<double> wall_normal_derivative(const ScalarField& p, Wall wall);

}  // namespace uncon
