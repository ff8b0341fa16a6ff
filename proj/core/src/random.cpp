#include "uncon/random.hpp"

#include <cmath>
#include <numbers>

namespace uncon {

namespace {

constexpr double pi = std::numbers::pi;

/// Mode shape along one direction: Fourier when periodic, sine/cosine between walls.
double mode(int m, double s, double len, bool periodic, bool vanish_on_walls, bool use_sin) {
  if (periodic) {
    const double k = 2.0 * pi * m / len;
    return use_sin ? std::sin(k * s) : std::cos(k * s);
  }
  if (vanish_on_walls) return std::sin((m + 1) * pi * s / len);
  return std::cos(m * pi * s / len);
}

}  // namespace

GridArray random_array(const Grid& grid, Location loc, Rng& rng) {
  GridArray a(grid, loc);
  for (double& x : a.values()) x = rng.uniform();
  return a;
}

ScalarField random_scalar(const Grid& grid, Rng& rng, bool mean_zero) {
  ScalarField s(random_array(grid, Location::Cell, rng));
  if (mean_zero) s.pin_mean();
  return s;
}

VectorField random_vector(const Grid& grid, Rng& rng) {
  return VectorField(random_array(grid, Location::XFace, rng),
                     random_array(grid, Location::YFace, rng));
}

VectorField random_smooth_noslip(const Grid& grid, Rng& rng, int modes) {
  VectorField w(grid);
  for (auto* comp : {&w.u, &w.v}) {
    const Location loc = comp->location();
    for (int mx = 0; mx < modes; ++mx) {
      for (int my = 0; my < modes; ++my) {
        for (int variant = 0; variant < 2; ++variant) {
          const double c = rng.normal() / (1.0 + mx * mx + my * my);
          for (int j = 0; j < comp->ny(); ++j) {
            const double y = grid.y_at(loc, j);
            const double fy = mode(my, y, grid.ly(), grid.periodic_y(), true, variant == 1);
            for (int i = 0; i < comp->nx(); ++i) {
              const double x = grid.x_at(loc, i);
              const double fx = mode(mx, x, grid.lx(), grid.periodic_x(), true, variant == 0);
              (*comp)(i, j) += c * fx * fy;
            }
          }
        }
      }
    }
  }
  return w;
}

ScalarField random_smooth_scalar(const Grid& grid, Rng& rng, int modes) {
  ScalarField s(grid);
  for (int mx = 0; mx < modes; ++mx) {
    for (int my = 0; my < modes; ++my) {
      for (int variant = 0; variant < 2; ++variant) {
        const double c = rng.normal() / (1.0 + mx * mx + my * my);
        for (int j = 0; j < grid.ny(); ++j) {
          const double y = grid.y_at(Location::Cell, j);
          const double fy = mode(my, y, grid.ly(), grid.periodic_y(), false, variant == 1);
          for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.x_at(Location::Cell, i);
            s(i, j) += c * mode(mx, x, grid.lx(), grid.periodic_x(), false, variant == 0) * fy;
          }
        }
      }
    }
  }
  s.pin_mean();
  return s;
}

}  // namespace uncon
