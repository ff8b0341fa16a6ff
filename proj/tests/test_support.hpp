#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "uncon/field.hpp"

namespace testing_support {

using uncon::Grid;
using uncon::GridArray;
using uncon::Location;
using uncon::ScalarField;
using uncon::VectorField;

inline Eigen::VectorXd vec(const VectorField& w) {
  const auto f = uncon::flatten(w);
  return Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
}

inline Eigen::VectorXd vec(const ScalarField& s) {
  const auto v = s.values.values();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline VectorField vfield(const Grid& g, const Eigen::VectorXd& x) {
  VectorField w(g);
  uncon::unflatten(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), w);
  return w;
}

inline ScalarField sfield(const Grid& g, const Eigen::VectorXd& x) {
  ScalarField s(g);
  for (int k = 0; k < s.values.size(); ++k) s.values[k] = x[k];
  return s;
}

/// Dense matrix of a linear map by columns; In/Out are ScalarField or VectorField.
template <class In, class F>
Eigen::MatrixXd columns(const Grid& g, int n_in, F&& f) {
  Eigen::MatrixXd m;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n_in);
  for (int k = 0; k < n_in; ++k) {
    e[k] = 1.0;
    Eigen::VectorXd col;
    if constexpr (std::is_same_v<In, VectorField>)
      col = vec(f(vfield(g, e)));
    else
      col = vec(f(sfield(g, e)));
    if (k == 0) m.resize(col.size(), n_in);
    m.col(k) = col;
    e[k] = 0.0;
  }
  return m;
}

/// Observed order from errors on a sequence of halving spacings.
inline double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing_support
