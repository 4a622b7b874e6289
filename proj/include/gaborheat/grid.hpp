#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "gaborheat/error.hpp"

namespace gaborheat {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

/**
 * Periodic sampling of the box [-L/2, L/2)^d with n samples per axis.
 *
 * Spatial samples are x_j = -L/2 + j h with h = L/n. Frequency samples are
 * xi_m = 2 pi m / L for m in [-n/2, n/2), stored at index k = m + n/2, so the
 * Nyquist row sits on the negative side.
 */
class Grid {
 public:
  Grid(int dim, double length, int samples);

  int dim() const noexcept { return dim_; }
  double length() const noexcept { return length_; }
  int samples() const noexcept { return samples_; }
  std::size_t size() const noexcept;

  double spacing() const noexcept { return length_ / samples_; }
  double frequency_spacing() const noexcept { return 2.0 * kPi / length_; }
  double nyquist() const noexcept { return kPi * samples_ / length_; }

  double x(int j) const noexcept { return -0.5 * length_ + j * spacing(); }
  double xi(int k) const noexcept { return (k - samples_ / 2) * frequency_spacing(); }

  // Nearest sample offset for a displacement (in units of h).
  long nearest_offset(double displacement) const noexcept;

  bool operator==(const Grid& o) const noexcept {
    return dim_ == o.dim_ && length_ == o.length_ && samples_ == o.samples_;
  }

 private:
  int dim_;
  double length_;
  int samples_;
};

/// Complex samples on a Grid, row-major over axes (axis 0 slowest).
class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  GridFunction(const Grid& grid, CVector values);

  const Grid& grid() const noexcept { return grid_; }
  const CVector& values() const noexcept { return values_; }
  CVector& values() noexcept { return values_; }
  cplx operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  cplx& operator[](std::size_t i) { return values_[static_cast<Eigen::Index>(i)]; }

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(cplx s);

 private:
  Grid grid_;
  CVector values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(cplx s, GridFunction a);

/// Samples f(x) (d = 1) or f(x, y) (d = 2).
template <class F>
GridFunction sample(const Grid& grid, F&& f) {
  GridFunction out(grid);
  const int n = grid.samples();
  if constexpr (std::is_invocable_v<F, double>) {
    require(grid.dim() == 1, "one-argument sampler on a 2-d grid");
    for (int j = 0; j < n; ++j) out[j] = f(grid.x(j));
  } else {
    require(grid.dim() == 2, "two-argument sampler on a 1-d grid");
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1) out[static_cast<std::size_t>(j0) * n + j1] = f(grid.x(j0), grid.x(j1));
  }
  return out;
}

using MultiIndex = std::array<int, 2>;

enum class WeightSide { frequency, space };

struct WeightOperatorSpec {
  int order = 0;
  WeightSide side = WeightSide::frequency;
};

// Discrete L^2 structure: <f, g> = h^d sum f conj(g).
cplx inner(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);

/**
 * Rectangle-rule Fourier transform, fhat(xi) = int e^{-i x xi} f(x) dx.
 * The output lives on the symmetric frequency grid of the same Grid.
 */
GridFunction dft(const GridFunction& f);
GridFunction inverse_dft(const GridFunction& fhat);

/// Inverse transform of (i xi)^alpha fhat. |alpha| <= 16.
GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha);

/// (1 - Delta)^k via the multiplier (1 + |xi|^2)^k, or (1 + |x|^2)^k pointwise.
GridFunction weight_apply(const GridFunction& f, const WeightOperatorSpec& w);

/**
 * ||f||_{Q^{2k}} = (||E_k(D) f||^2 + ||E_k(x) f||^2)^{1/2}.
 *
 * The H^{2k} norm of fhat is taken against (2 pi)^{-d} dxi, which by Parseval
 * equals ||E_k(x) f||; with that constant, k = 0 gives sqrt(2) ||f||.
 */
double sobolev_q_norm(const GridFunction& f, int k);

/// Largest |f| within L/8 of the box boundary.
double boundary_mass(const GridFunction& f);

/// Numerical support check; emits a warning and returns false on violation.
bool check_numerically_supported(const GridFunction& f, const char* what, double tol = 1e-12);

}  // namespace gaborheat
