#pragma once

#include <string>
#include <string_view>

namespace uncon {

/// Boundary topology of the rectangle [0, lx] x [0, ly].
enum class Topology {
  PeriodicChannel,  ///< periodic in x, no-slip walls at y = 0 and y = ly
  ClosedBox,        ///< walls on all four sides; corners violate C^3 smoothness
  FullyPeriodic,    ///< no walls at all; used as the degenerate harness
};

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view s);

/// Where a grid array is sampled on the staggered (MAC) layout.
///
/// Cell values sit at cell centres. XFace values sit at the centres of faces
/// normal to x, YFace values at faces normal to y. Faces that coincide with a
/// wall are not stored: the wall-normal velocity there is identically zero.
enum class Location { Cell, XFace, YFace };

/// Structured 2-D grid descriptor. Immutable after construction.
class Grid {
 public:
  /// Throws ValidationError unless nx, ny >= 4 and lx, ly > 0.
  Grid(Topology topology, int nx, int ny, double lx = 1.0, double ly = 1.0);

  static Grid channel(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    return Grid(Topology::PeriodicChannel, nx, ny, lx, ly);
  }
  static Grid box(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    return Grid(Topology::ClosedBox, nx, ny, lx, ly);
  }
  static Grid periodic(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    return Grid(Topology::FullyPeriodic, nx, ny, lx, ly);
  }

  Topology topology() const noexcept { return topology_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  double dx() const noexcept { return lx_ / nx_; }
  double dy() const noexcept { return ly_ / ny_; }
  double cell_area() const noexcept { return dx() * dy(); }
  double area() const noexcept { return lx_ * ly_; }

  bool periodic_x() const noexcept { return topology_ != Topology::ClosedBox; }
  bool periodic_y() const noexcept { return topology_ == Topology::FullyPeriodic; }
  bool has_walls() const noexcept { return topology_ != Topology::FullyPeriodic; }

  /// True when the domain has corners, i.e. the boundary is not C^3.
  bool corner_flag() const noexcept { return topology_ == Topology::ClosedBox; }

  /// Stored extent of an array at `loc`.
  int extent_x(Location loc) const noexcept;
  int extent_y(Location loc) const noexcept;
  int size(Location loc) const noexcept { return extent_x(loc) * extent_y(loc); }

  /// Physical coordinates of stored sample (i, j) at `loc`.
  double x_at(Location loc, int i) const noexcept;
  double y_at(Location loc, int j) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Topology topology_;
  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

}  // namespace uncon
