#include "uncon/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uncon/errors.hpp"

namespace uncon {

namespace {

void require_same(const GridArray& a, const GridArray& b) {
  if (a.location() != b.location() || !(a.grid() == b.grid()))
    throw ValidationError("grid arrays live on different grids or locations");
}

}  // namespace

GridArray::GridArray(const Grid& grid, Location loc)
    : grid_(grid),
      loc_(loc),
      nx_(grid.extent_x(loc)),
      ny_(grid.extent_y(loc)),
      data_(static_cast<std::size_t>(nx_) * ny_, 0.0) {}

double GridArray::sum() const noexcept {
  return std::accumulate(data_.begin(), data_.end(), 0.0);
}

double GridArray::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void GridArray::fill(double value) noexcept { std::fill(data_.begin(), data_.end(), value); }

void GridArray::subtract_mean() noexcept {
  const double m = mean();
  for (double& x : data_) x -= m;
}

GridArray& GridArray::operator+=(const GridArray& o) {
  require_same(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

GridArray& GridArray::operator-=(const GridArray& o) {
  require_same(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

GridArray& GridArray::operator*=(double s) noexcept {
  for (double& x : data_) x *= s;
  return *this;
}

GridArray& GridArray::axpy(double s, const GridArray& o) {
  require_same(*this, o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

GridArray operator+(GridArray a, const GridArray& b) { return a += b; }
GridArray operator-(GridArray a, const GridArray& b) { return a -= b; }
GridArray operator*(double s, GridArray a) { return a *= s; }

ScalarField::ScalarField(GridArray a, bool pinned) : values(std::move(a)), mean_pinned(pinned) {
  if (values.location() != Location::Cell)
    throw ValidationError("scalar fields are cell-centred");
}

void ScalarField::pin_mean() noexcept {
  values.subtract_mean();
  mean_pinned = true;
}

VectorField::VectorField(GridArray u_in, GridArray v_in, VelocityBc bc_in)
    : u(std::move(u_in)), v(std::move(v_in)), bc(bc_in) {
  if (u.location() != Location::XFace || v.location() != Location::YFace ||
      !(u.grid() == v.grid()))
    throw ValidationError("vector field components must sit on x- and y-faces of one grid");
}

double VectorField::max_abs() const noexcept { return std::max(u.max_abs(), v.max_abs()); }

VectorField& VectorField::operator+=(const VectorField& o) {
  u += o.u;
  v += o.v;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  u -= o.u;
  v -= o.v;
  return *this;
}

VectorField& VectorField::operator*=(double s) noexcept {
  u *= s;
  v *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& o) {
  u.axpy(s, o.u);
  v.axpy(s, o.v);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

std::vector<double> flatten(const VectorField& w) {
  std::vector<double> out;
  out.reserve(w.size());
  out.insert(out.end(), w.u.values().begin(), w.u.values().end());
  out.insert(out.end(), w.v.values().begin(), w.v.values().end());
  return out;
}

void unflatten(std::span<const double> flat, VectorField& w) {
  if (static_cast<int>(flat.size()) != w.size())
    throw ValidationError("flat vector length does not match field size");
  std::copy_n(flat.begin(), w.u.size(), w.u.values().begin());
  std::copy(flat.begin() + w.u.size(), flat.end(), w.v.values().begin());
}

}  // namespace uncon
