#pragma once

#include <cstdint>
#include <vector>

#include "gaborheat/grid.hpp"

namespace gaborheat {

/// e^{i xi0 y} e^{-(y - x0)^2 / (2 w^2)}.
GridFunction gaussian_packet(const Grid& grid, double x0, double width, double xi0 = 0.0);

/// L^2-normalized Hermite function h_k(y) = (2^k k! sqrt(pi))^{-1/2} H_k(y) e^{-y^2/2}.
GridFunction hermite_function(const Grid& grid, int k);

/// Deterministic uniform doubles in [0, 1) from a 64-bit seed (platform independent).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : state_(seed) {}
  double next();
  double between(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::uint64_t state_;
};

/// Sum of three random Gaussian packets, centers in [-6, 6], frequencies in [-8, 8].
GridFunction random_band_limited(const Grid& grid, UniformStream& rng);

/// Frozen 12-member battery for the quadratic-form tester.
std::vector<GridFunction> garding_battery(const Grid& grid, std::uint64_t seed = 20240611);

/// Frozen 20-member battery of random band-limited functions.
std::vector<GridFunction> norm_battery(const Grid& grid, std::uint64_t seed = 7041);

}  // namespace gaborheat
