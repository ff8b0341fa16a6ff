#include "uncon/operators.hpp"

#include <cmath>

#include "uncon/errors.hpp"

namespace uncon {

namespace {

int wrap(int k, int n) { return (k % n + n) % n; }

/// Neighbour value along a line of n samples, honouring the ghost rule.
template <class Get>
double neighbour(Get&& get, int k, int n, LineKind kind) {
  if (k >= 0 && k < n) return get(k);
  switch (kind) {
    case LineKind::Periodic:
      return get(wrap(k, n));
    case LineKind::CellOdd:
      return -get(k < 0 ? 0 : n - 1);
    case LineKind::CellEven:
      return get(k < 0 ? 0 : n - 1);
    case LineKind::Node:
      return 0.0;
  }
  return 0.0;
}

LineKind wall_kind_for_cells(ScalarBc bc) {
  return bc == ScalarBc::Dirichlet0 ? LineKind::CellOdd : LineKind::CellEven;
}

}  // namespace

StencilKinds scalar_kinds(const Grid& grid, ScalarBc bc) {
  const LineKind wall = wall_kind_for_cells(bc);
  return {grid.periodic_x() ? LineKind::Periodic : wall,
          grid.periodic_y() ? LineKind::Periodic : wall};
}

StencilKinds velocity_kinds(const Grid& grid, Location component, VelocityBc bc) {
  const LineKind tangential = bc == VelocityBc::NoSlip ? LineKind::CellOdd : LineKind::CellEven;
  StencilKinds k{LineKind::Periodic, LineKind::Periodic};
  if (!grid.periodic_x()) k.x = component == Location::XFace ? LineKind::Node : tangential;
  if (!grid.periodic_y()) k.y = component == Location::YFace ? LineKind::Node : tangential;
  return k;
}

VectorField grad(const ScalarField& p) {
  const Grid& g = p.grid();
  VectorField w(g, VelocityBc::Free);
  const int nx = g.nx();
  const int ny = g.ny();
  const int ox = g.periodic_x() ? 0 : 1;
  const int oy = g.periodic_y() ? 0 : 1;
  const double rdx = 1.0 / g.dx();
  const double rdy = 1.0 / g.dy();
  for (int j = 0; j < w.u.ny(); ++j) {
    for (int a = 0; a < w.u.nx(); ++a) {
      const int f = a + ox;  // face f separates cells f-1 and f
      w.u(a, j) = (p(wrap(f, nx), j) - p(wrap(f - 1, nx), j)) * rdx;
    }
  }
  for (int b = 0; b < w.v.ny(); ++b) {
    const int f = b + oy;
    for (int i = 0; i < w.v.nx(); ++i)
      w.v(i, b) = (p(i, wrap(f, ny)) - p(i, wrap(f - 1, ny))) * rdy;
  }
  return w;
}

ScalarField div(const VectorField& w) {
  const Grid& g = w.grid();
  ScalarField d(g);
  const int nx = g.nx();
  const int ny = g.ny();
  const bool px = g.periodic_x();
  const bool py = g.periodic_y();
  const double rdx = 1.0 / g.dx();
  const double rdy = 1.0 / g.dy();
  // face value by global face index; wall faces carry zero normal velocity
  auto u_face = [&](int f, int j) {
    if (px) return w.u(wrap(f, nx), j);
    return (f <= 0 || f >= nx) ? 0.0 : w.u(f - 1, j);
  };
  auto v_face = [&](int i, int f) {
    if (py) return w.v(i, wrap(f, ny));
    return (f <= 0 || f >= ny) ? 0.0 : w.v(i, f - 1);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      d(i, j) = (u_face(i + 1, j) - u_face(i, j)) * rdx + (v_face(i, j + 1) - v_face(i, j)) * rdy;
  return d;
}

GridArray laplacian(const GridArray& a, StencilKinds kinds) {
  const Grid& g = a.grid();
  GridArray out(g, a.location());
  const int mx = a.nx();
  const int my = a.ny();
  const double rdx2 = 1.0 / (g.dx() * g.dx());
  const double rdy2 = 1.0 / (g.dy() * g.dy());
  for (int j = 0; j < my; ++j) {
    auto row = [&](int k) { return a(k, j); };
    for (int i = 0; i < mx; ++i) {
      auto col = [&](int k) { return a(i, k); };
      const double c = a(i, j);
      const double xx = neighbour(row, i - 1, mx, kinds.x) - 2.0 * c +
                        neighbour(row, i + 1, mx, kinds.x);
      const double yy = neighbour(col, j - 1, my, kinds.y) - 2.0 * c +
                        neighbour(col, j + 1, my, kinds.y);
      out(i, j) = xx * rdx2 + yy * rdy2;
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& p, ScalarBc bc) {
  return ScalarField(laplacian(p.values, scalar_kinds(p.grid(), bc)));
}

VectorField laplacian(const VectorField& w) {
  const Grid& g = w.grid();
  return VectorField(laplacian(w.u, velocity_kinds(g, Location::XFace, w.bc)),
                     laplacian(w.v, velocity_kinds(g, Location::YFace, w.bc)), w.bc);
}

double inner(const GridArray& a, const GridArray& b) {
  if (a.location() != b.location() || !(a.grid() == b.grid()))
    throw ValidationError("inner product of arrays on different locations");
  double s = 0.0;
  for (int k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell_area();
}

double inner(const ScalarField& a, const ScalarField& b) { return inner(a.values, b.values); }

double inner(const VectorField& a, const VectorField& b) {
  return inner(a.u, b.u) + inner(a.v, b.v);
}

double norm(const ScalarField& a) { return std::sqrt(inner(a, a)); }
double norm(const VectorField& a) { return std::sqrt(inner(a, a)); }

Norms norms(const VectorField& u) {
  const VectorField lap = laplacian(u);
  Norms n;
  n.l2 = norm(u);
  n.h1_semi = std::sqrt(std::max(0.0, -inner(u, lap)));
  n.lap_l2 = norm(lap);
  return n;
}

std::vector<double> wall_normal_derivative(const ScalarField& p, Wall wall) {
  const Grid& g = p.grid();
  const bool vertical = wall == Wall::Left || wall == Wall::Right;
  if ((vertical && g.periodic_x()) || (!vertical && g.periodic_y()))
    throw ValidationError("requested wall does not exist for this topology");
  std::vector<double> out;
  const int n = vertical ? g.ny() : g.nx();
  const int m = vertical ? g.nx() : g.ny();
  const double h = vertical ? g.dx() : g.dy();
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    auto at = [&](int s) {
      switch (wall) {
        case Wall::Bottom: return p(k, s);
        case Wall::Top: return p(k, m - 1 - s);
        case Wall::Left: return p(s, k);
        case Wall::Right: return p(m - 1 - s, k);
      }
      return 0.0;
    };
    // derivative into the domain of the quadratic through cells at h/2, 3h/2, 5h/2
    const double inward = (-2.0 * at(0) + 3.0 * at(1) - at(2)) / h;
    out.push_back(-inward);
  }
  return out;
}

}  // namespace uncon
