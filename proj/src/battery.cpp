#include "gaborheat/battery.hpp"

#include <cmath>

#include "gaborheat/error.hpp"

namespace gaborheat {

GridFunction gaussian_packet(const Grid& grid, double x0, double width, double xi0) {
  require(grid.dim() == 1, "test functions are implemented for d = 1");
  require(width > 0.0, "packet width must be positive");
  return sample(grid, [=](double y) {
    const double u = (y - x0) / width;
    return std::polar(std::exp(-0.5 * u * u), xi0 * y);
  });
}

GridFunction hermite_function(const Grid& grid, int k) {
  require(grid.dim() == 1, "test functions are implemented for d = 1");
  require(k >= 0 && k <= 40, "Hermite order must lie in [0, 40]");
  return sample(grid, [k](double y) {
    // Normalized recurrence avoids overflow of H_k and k!.
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * y * y);
    for (int j = 1; j <= k; ++j) {
      const double next = std::sqrt(2.0 / j) * y * cur - std::sqrt(double(j - 1) / j) * prev;
      prev = cur;
      cur = next;
    }
    return cplx(cur);
  });
}

double UniformStream::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return double(z >> 11) * 0x1.0p-53;
}

GridFunction random_band_limited(const Grid& grid, UniformStream& rng) {
  GridFunction f(grid);
  for (int p = 0; p < 3; ++p) {
    const double x0 = rng.between(-6.0, 6.0);
    const double w = rng.between(0.7, 2.0);
    const double xi0 = rng.between(-8.0, 8.0);
    const cplx c = std::polar(rng.between(0.3, 1.0), rng.between(0.0, 2.0 * kPi));
    f += c * gaussian_packet(grid, x0, w, xi0);
  }
  return f;
}

std::vector<GridFunction> garding_battery(const Grid& grid, std::uint64_t seed) {
  std::vector<GridFunction> out;
  for (double w : {0.5, 1.0, 2.0})
    for (double c : {-2.0, 3.0}) out.push_back(gaussian_packet(grid, c, w));
  out.push_back(gaussian_packet(grid, 0.0, 1.0, 4.0));
  out.push_back(gaussian_packet(grid, -1.0, 0.8, -6.0));
  out.push_back(hermite_function(grid, 1));
  out.push_back(hermite_function(grid, 4));
  UniformStream rng(seed);
  out.push_back(random_band_limited(grid, rng));
  out.push_back(random_band_limited(grid, rng));
  return out;
}

std::vector<GridFunction> norm_battery(const Grid& grid, std::uint64_t seed) {
  UniformStream rng(seed);
  std::vector<GridFunction> out;
  for (int i = 0; i < 20; ++i) out.push_back(random_band_limited(grid, rng));
  return out;
}

}  // namespace gaborheat
