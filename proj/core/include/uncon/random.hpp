#pragma once

#include <cstdint>
#include <random>

#include "uncon/field.hpp"

namespace uncon {

/// The single seeded generator used for every random test field.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 20240601) : engine_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// White-noise samples in [-1, 1].
GridArray random_array(const Grid& grid, Location loc, Rng& rng);
ScalarField random_scalar(const Grid& grid, Rng& rng, bool mean_zero = true);
VectorField random_vector(const Grid& grid, Rng& rng);

/// Random combination of low Fourier/sine modes (up to `modes` per direction)
/// that vanishes on every wall: a smooth no-slip field.
VectorField random_smooth_noslip(const Grid& grid, Rng& rng, int modes = 4);

/// Random smooth cell scalar (low cosine modes), mean-zero.
ScalarField random_smooth_scalar(const Grid& grid, Rng& rng, int modes = 4);

}  // namespace uncon
