#include "uncon/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "uncon/errors.hpp"

namespace uncon {

ManufacturedFlow::ManufacturedFlow(double lx, double ly, double nu, double amplitude, bool steady)
    : lx_(lx), ly_(ly), nu_(nu), amp_(amplitude), steady_(steady), k_(2.0 * std::numbers::pi / lx) {
  if (!(lx > 0.0 && ly > 0.0)) throw ValidationError("domain lengths must be positive");
  if (!(nu > 0.0)) throw ValidationError("nu must be positive");
}

double ManufacturedFlow::time_factor(double t) const { return steady_ ? 1.0 : std::cos(t); }
double ManufacturedFlow::time_factor_rate(double t) const { return steady_ ? 0.0 : -std::sin(t); }

double ManufacturedFlow::Y(double y) const {
  const double s = y * (ly_ - y);
  return s * s;
}
double ManufacturedFlow::Y1(double y) const {
  return 2.0 * ly_ * ly_ * y - 6.0 * ly_ * y * y + 4.0 * y * y * y;
}
double ManufacturedFlow::Y2(double y) const {
  return 2.0 * ly_ * ly_ - 12.0 * ly_ * y + 12.0 * y * y;
}
double ManufacturedFlow::Y3(double y) const { return -12.0 * ly_ + 24.0 * y; }

double ManufacturedFlow::psi(double x, double y, double t) const {
  return amp_ * std::sin(k_ * x) * Y(y) * time_factor(t);
}

double ManufacturedFlow::u(double x, double y, double t) const {
  return amp_ * std::sin(k_ * x) * Y1(y) * time_factor(t);
}

double ManufacturedFlow::v(double x, double y, double t) const {
  return -amp_ * k_ * std::cos(k_ * x) * Y(y) * time_factor(t);
}

double ManufacturedFlow::forcing_u(double x, double y, double t) const {
  const double s = std::sin(k_ * x);
  const double c = std::cos(k_ * x);
  const double T = time_factor(t);
  const double uu = amp_ * s * Y1(y) * T;
  const double vv = -amp_ * k_ * c * Y(y) * T;
  const double ux = amp_ * k_ * c * Y1(y) * T;
  const double uy = amp_ * s * Y2(y) * T;
  const double lap = amp_ * s * (Y3(y) - k_ * k_ * Y1(y)) * T;
  const double dudt = amp_ * s * Y1(y) * time_factor_rate(t);
  return dudt + uu * ux + vv * uy - nu_ * lap;
}

double ManufacturedFlow::forcing_v(double x, double y, double t) const {
  const double s = std::sin(k_ * x);
  const double c = std::cos(k_ * x);
  const double T = time_factor(t);
  const double uu = amp_ * s * Y1(y) * T;
  const double vv = -amp_ * k_ * c * Y(y) * T;
  const double vx = amp_ * k_ * k_ * s * Y(y) * T;
  const double vy = -amp_ * k_ * c * Y1(y) * T;
  const double lap = amp_ * k_ * c * (k_ * k_ * Y(y) - Y2(y)) * T;
  const double dvdt = -amp_ * k_ * c * Y(y) * time_factor_rate(t);
  return dvdt + uu * vx + vv * vy - nu_ * lap;
}

double ManufacturedFlow::stokes_neumann_data(double x, Wall wall, double t) const {
  // n . Lap u; only the wall-normal component v enters on the channel walls.
  const double c = std::cos(k_ * x);
  const double T = time_factor(t);
  auto lap_v = [&](double y) { return amp_ * k_ * c * (k_ * k_ * Y(y) - Y2(y)) * T; };
  switch (wall) {
    case Wall::Bottom:
      return -lap_v(0.0);
    case Wall::Top:
      return lap_v(ly_);
    default:
      throw ValidationError("manufactured flow lives on the channel; no side walls");
  }
}

VectorField ManufacturedFlow::velocity(const Grid& grid, double t) const {
  if (grid.topology() != Topology::PeriodicChannel)
    throw ValidationError("manufactured flow requires the periodic channel");
  return curl_of_stream(grid, [&](double x, double y) { return psi(x, y, t); });
}

VectorField ManufacturedFlow::sampled_velocity(const Grid& grid, double t) const {
  return VectorField::sample(
      grid, [&](double x, double y) { return u(x, y, t); },
      [&](double x, double y) { return v(x, y, t); });
}

VectorField ManufacturedFlow::forcing(const Grid& grid, double t) const {
  return VectorField::sample(
      grid, [&](double x, double y) { return forcing_u(x, y, t); },
      [&](double x, double y) { return forcing_v(x, y, t); });
}

ManufacturedFlow ManufacturedFlow::normalised(const Grid& grid, double target, double t) const {
  const double g = norms(velocity(grid, t)).h1_semi;
  if (!(g > 0.0)) throw ValidationError("cannot normalise a vanishing manufactured field");
  return ManufacturedFlow(lx_, ly_, nu_, amp_ * target / g, steady_);
}

}  // namespace uncon
