#pragma once

#include "uncon/field.hpp"
#include "uncon/operators.hpp"

namespace uncon {

/// Manufactured channel flow from the stream function
///   psi = A sin(2 pi x / lx) y^2 (ly - y)^2 T(t),  T = cos t (or 1 when steady),
/// with velocity (psi_y, -psi_x). It is no-slip and divergence-free by
/// construction, and its x-dependent wall vorticity drives a nonzero Stokes
/// pressure. The exact pressure is taken as zero, so the injected forcing is
///   f = du/dt + u . grad u - nu Lap u.
class ManufacturedFlow {
 public:
  ManufacturedFlow(double lx, double ly, double nu, double amplitude = 1.0, bool steady = false);

  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double nu() const noexcept { return nu_; }
  double amplitude() const noexcept { return amp_; }
  bool steady() const noexcept { return steady_; }

  double psi(double x, double y, double t) const;
  double u(double x, double y, double t) const;
  double v(double x, double y, double t) const;
  double forcing_u(double x, double y, double t) const;
  double forcing_v(double x, double y, double t) const;

  /// Outward normal derivative of the exact Stokes pressure at the wall
  /// point x: n . (Lap u - grad div u) = n . Lap u.
  double stokes_neumann_data(double x, Wall wall, double t) const;

  /// Discrete velocity from nodal psi (exactly divergence-free on the grid).
  VectorField velocity(const Grid& grid, double t) const;
  /// Exact velocity sampled pointwise at the staggered points.
  VectorField sampled_velocity(const Grid& grid, double t) const;
  VectorField forcing(const Grid& grid, double t) const;

  /// Copy with the amplitude rescaled so that the discrete |grad u(t)| = target.
  ManufacturedFlow normalised(const Grid& grid, double target_grad_norm, double t = 0.0) const;

 private:
  double time_factor(double t) const;
  double time_factor_rate(double t) const;
  double Y(double y) const;
  double Y1(double y) const;
  double Y2(double y) const;
  double Y3(double y) const;

  double lx_, ly_, nu_, amp_;
  bool steady_;
  double k_;
};

}  // namespace uncon
