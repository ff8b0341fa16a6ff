#include "uncon/grid.hpp"

#include "uncon/errors.hpp"

namespace uncon {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::PeriodicChannel:
      return "channel";
    case Topology::ClosedBox:
      return "box";
    case Topology::FullyPeriodic:
      return "periodic";
  }
  return "unknown";
}

Topology topology_from_string(std::string_view s) {
  if (s == "channel") return Topology::PeriodicChannel;
  if (s == "box") return Topology::ClosedBox;
  if (s == "periodic") return Topology::FullyPeriodic;
  throw ValidationError("unknown topology '" + std::string(s) +
                        "' (expected channel, box or periodic)");
}

Grid::Grid(Topology topology, int nx, int ny, double lx, double ly)
    : topology_(topology), nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 4 || ny < 4) throw ValidationError("grid needs nx, ny >= 4");
  if (!(lx > 0.0) || !(ly > 0.0)) throw ValidationError("grid lengths must be positive");
}

int Grid::extent_x(Location loc) const noexcept {
  if (loc == Location::XFace && !periodic_x()) return nx_ - 1;
  return nx_;
}

int Grid::extent_y(Location loc) const noexcept {
  if (loc == Location::YFace && !periodic_y()) return ny_ - 1;
  return ny_;
}

double Grid::x_at(Location loc, int i) const noexcept {
  if (loc == Location::XFace) return (periodic_x() ? i : i + 1) * dx();
  return (i + 0.5) * dx();
}

double Grid::y_at(Location loc, int j) const noexcept {
  if (loc == Location::YFace) return (periodic_y() ? j : j + 1) * dy();
  return (j + 0.5) * dy();
}

}  // namespace uncon
