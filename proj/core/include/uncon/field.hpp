#pragma once

#include <span>
#include <vector>

#include "uncon/grid.hpp"

namespace uncon {

/// Wall treatment for the tangential velocity ghost values. The wall-normal
/// component is zero on walls in both cases.
enum class VelocityBc { NoSlip, Free };

/// Homogeneous boundary condition for cell-centred scalars.
enum class ScalarBc { Dirichlet0, Neumann0 };

/// Dense 2-D array of samples at one staggered location. Row-major in j.
class GridArray {
 public:
  GridArray(const Grid& grid, Location loc);

  /// Samples f(x, y) at every stored point.
  template <class F>
  static GridArray sample(const Grid& grid, Location loc, F&& f) {
    GridArray a(grid, loc);
    for (int j = 0; j < a.ny(); ++j) {
      const double y = grid.y_at(loc, j);
      for (int i = 0; i < a.nx(); ++i) a(i, j) = f(grid.x_at(loc, i), y);
    }
    return a;
  }

  const Grid& grid() const noexcept { return grid_; }
  Location location() const noexcept { return loc_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int size() const noexcept { return static_cast<int>(data_.size()); }

  double& operator()(int i, int j) noexcept { return data_[j * nx_ + i]; }
  double operator()(int i, int j) const noexcept { return data_[j * nx_ + i]; }
  double& operator[](int k) noexcept { return data_[k]; }
  double operator[](int k) const noexcept { return data_[k]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  double sum() const noexcept;
  double mean() const noexcept { return sum() / size(); }
  double max_abs() const noexcept;
  void fill(double value) noexcept;
  void subtract_mean() noexcept;

  GridArray& operator+=(const GridArray& o);
  GridArray& operator-=(const GridArray& o);
  GridArray& operator*=(double s) noexcept;
  /// this += s * o
  GridArray& axpy(double s, const GridArray& o);

 private:
  Grid grid_;
  Location loc_;
  int nx_;
  int ny_;
  std::vector<double> data_;
};

GridArray operator+(GridArray a, const GridArray& b);
GridArray operator-(GridArray a, const GridArray& b);
GridArray operator*(double s, GridArray a);

/// Cell-centred scalar (pressure potentials, divergence, h, ...).
struct ScalarField {
  explicit ScalarField(const Grid& grid) : values(grid, Location::Cell) {}
  explicit ScalarField(GridArray a, bool pinned = false);

  template <class F>
  static ScalarField sample(const Grid& grid, F&& f) {
    return ScalarField(GridArray::sample(grid, Location::Cell, std::forward<F>(f)));
  }

  const Grid& grid() const noexcept { return values.grid(); }
  double& operator()(int i, int j) noexcept { return values(i, j); }
  double operator()(int i, int j) const noexcept { return values(i, j); }

  /// Subtracts the mean and marks the field as mean-pinned.
  void pin_mean() noexcept;

  GridArray values;
  bool mean_pinned = false;
};

/// Two-component velocity-like field on the MAC layout: `u` at x-faces,
/// `v` at y-faces.
struct VectorField {
  explicit VectorField(const Grid& grid, VelocityBc bc = VelocityBc::NoSlip)
      : u(grid, Location::XFace), v(grid, Location::YFace), bc(bc) {}
  VectorField(GridArray u, GridArray v, VelocityBc bc = VelocityBc::NoSlip);

  /// Samples each component at its own staggered points.
  template <class FU, class FV>
  static VectorField sample(const Grid& grid, FU&& fu, FV&& fv,
                            VelocityBc bc = VelocityBc::NoSlip) {
    return VectorField(GridArray::sample(grid, Location::XFace, std::forward<FU>(fu)),
                       GridArray::sample(grid, Location::YFace, std::forward<FV>(fv)), bc);
  }

  const Grid& grid() const noexcept { return u.grid(); }
  int size() const noexcept { return u.size() + v.size(); }
  double max_abs() const noexcept;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s) noexcept;
  VectorField& axpy(double s, const VectorField& o);

  GridArray u;
  GridArray v;
  VelocityBc bc = VelocityBc::NoSlip;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Flattened view used by dense assembly: u entries first, then v.
std::vector<double> flatten(const VectorField& w);
void unflatten(std::span<const double> flat, VectorField& w);

}  // namespace uncon
