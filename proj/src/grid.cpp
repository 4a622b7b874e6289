#include "gaborheat/grid.hpp"

#include <cmath>
#include <span>
#include <sstream>

#include "fft.hpp"
#include "gaborheat/error.hpp"

namespace gaborheat {

Grid::Grid(int dim, double length, int samples) : dim_(dim), length_(length), samples_(samples) {
  require(dim == 1 || dim == 2, "grid dimension must be 1 or 2");
  require(length > 0.0 && std::isfinite(length), "grid length must be positive");
  require(samples >= 8 && (samples & (samples - 1)) == 0, "samples per axis must be a power of two >= 8");
}

std::size_t Grid::size() const noexcept {
  return dim_ == 1 ? std::size_t(samples_) : std::size_t(samples_) * samples_;
}

long Grid::nearest_offset(double displacement) const noexcept { return std::lround(displacement / spacing()); }

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(CVector::Zero(Eigen::Index(grid.size()))) {}

GridFunction::GridFunction(const Grid& grid, CVector values) : grid_(grid), values_(std::move(values)) {
  require(values_.size() == Eigen::Index(grid.size()), "sample count does not match grid");
  require(values_.allFinite(), "grid function has non-finite entries");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require(grid_ == o.grid_, "grid mismatch");
  values_ += o.values_;
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require(grid_ == o.grid_, "grid mismatch");
  values_ -= o.values_;
  return *this;
}

GridFunction& GridFunction::operator*=(cplx s) {
  values_ *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(cplx s, GridFunction a) { return a *= s; }

namespace {

double cell_volume(const Grid& g) { return std::pow(g.spacing(), g.dim()); }

std::span<cplx> as_span(CVector& v) { return {v.data(), std::size_t(v.size())}; }

// (-1)^m for m = k - n/2, per axis.
double parity(int k, int n) { return ((k - n / 2) & 1) ? -1.0 : 1.0; }

// Applies mult(xi_index...) on the frequency side.
template <class Mult>
GridFunction fourier_multiplier(const GridFunction& f, Mult&& mult) {
  GridFunction fh = dft(f);
  const Grid& g = f.grid();
  const int n = g.samples();
  if (g.dim() == 1) {
    for (int k = 0; k < n; ++k) fh[k] *= mult(g.xi(k), 0.0);
  } else {
    for (int k0 = 0; k0 < n; ++k0)
      for (int k1 = 0; k1 < n; ++k1) fh[std::size_t(k0) * n + k1] *= mult(g.xi(k0), g.xi(k1));
  }
  return inverse_dft(fh);
}

}  // namespace

cplx inner(const GridFunction& f, const GridFunction& g) {
  require(f.grid() == g.grid(), "grid mismatch");
  return cell_volume(f.grid()) * g.values().dot(f.values());
}

double l2_norm(const GridFunction& f) { return std::sqrt(cell_volume(f.grid())) * f.values().norm(); }

double sup_norm(const GridFunction& f) { return f.values().size() ? f.values().cwiseAbs().maxCoeff() : 0.0; }

GridFunction dft(const GridFunction& f) {
  const Grid& g = f.grid();
  const int n = g.samples();
  CVector v = f.values();
  detail::fft_inplace(as_span(v), g.dim(), n, -1);
  // x_j = -L/2 + j h contributes the phase e^{i pi m} per axis.
  const double scale = cell_volume(g);
  CVector out(v.size());
  if (g.dim() == 1) {
    for (int k = 0; k < n; ++k) out[k] = scale * parity(k, n) * v[(k + n / 2) % n];
  } else {
    for (int k0 = 0; k0 < n; ++k0)
      for (int k1 = 0; k1 < n; ++k1)
        out[Eigen::Index(k0) * n + k1] =
            scale * parity(k0, n) * parity(k1, n) * v[Eigen::Index((k0 + n / 2) % n) * n + (k1 + n / 2) % n];
  }
  return GridFunction(g, std::move(out));
}

GridFunction inverse_dft(const GridFunction& fhat) {
  const Grid& g = fhat.grid();
  const int n = g.samples();
  CVector v(fhat.values().size());
  if (g.dim() == 1) {
    for (int k = 0; k < n; ++k) v[(k + n / 2) % n] = parity(k, n) * fhat[k];
  } else {
    for (int k0 = 0; k0 < n; ++k0)
      for (int k1 = 0; k1 < n; ++k1)
        v[Eigen::Index((k0 + n / 2) % n) * n + (k1 + n / 2) % n] =
            parity(k0, n) * parity(k1, n) * fhat[std::size_t(k0) * n + k1];
  }
  detail::fft_inplace(as_span(v), g.dim(), n, +1);
  v *= std::pow(g.length(), -g.dim());
  return GridFunction(g, std::move(v));
}

GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha) {
  const int a0 = alpha[0];
  const int a1 = f.grid().dim() == 2 ? alpha[1] : 0;
  require(a0 >= 0 && a1 >= 0 && a0 + a1 <= 16, "derivative order must satisfy 0 <= |alpha| <= 16");
  if (a0 == 0 && a1 == 0) return f;
  const cplx I(0.0, 1.0);
  return fourier_multiplier(f, [&](double xi0, double xi1) { return std::pow(I * xi0, a0) * std::pow(I * xi1, a1); });
}

GridFunction weight_apply(const GridFunction& f, const WeightOperatorSpec& w) {
  require(std::abs(w.order) <= 8, "weight order must satisfy |k| <= 8");
  if (w.order == 0) return f;
  const int k = w.order;
  if (w.side == WeightSide::frequency)
    return fourier_multiplier(f, [k](double xi0, double xi1) { return std::pow(1.0 + xi0 * xi0 + xi1 * xi1, k); });

  const Grid& g = f.grid();
  const int n = g.samples();
  GridFunction out = f;
  if (g.dim() == 1) {
    for (int j = 0; j < n; ++j) out[j] *= std::pow(1.0 + g.x(j) * g.x(j), k);
  } else {
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1)
        out[std::size_t(j0) * n + j1] *= std::pow(1.0 + g.x(j0) * g.x(j0) + g.x(j1) * g.x(j1), k);
  }
  return out;
}

double sobolev_q_norm(const GridFunction& f, int k) {
  require(k >= 0, "Q^{2k} norm requires k >= 0");
  const double fd = l2_norm(weight_apply(f, {k, WeightSide::frequency}));
  const double sp = l2_norm(weight_apply(f, {k, WeightSide::space}));
  return std::hypot(fd, sp);
}

double boundary_mass(const GridFunction& f) {
  const Grid& g = f.grid();
  const int n = g.samples();
  const double edge = 0.5 * g.length() - g.length() / 8.0;
  auto near_edge = [edge](double x) { return std::abs(x) >= edge; };
  double worst = 0.0;
  if (g.dim() == 1) {
    for (int j = 0; j < n; ++j)
      if (near_edge(g.x(j))) worst = std::max(worst, std::abs(f[j]));
  } else {
    for (int j0 = 0; j0 < n; ++j0)
      for (int j1 = 0; j1 < n; ++j1)
        if (near_edge(g.x(j0)) || near_edge(g.x(j1))) worst = std::max(worst, std::abs(f[std::size_t(j0) * n + j1]));
  }
  return worst;
}

bool check_numerically_supported(const GridFunction& f, const char* what, double tol) {
  const double mass = boundary_mass(f);
  if (mass < tol) return true;
  std::ostringstream os;
  os << what << " is not numerically supported: |f| = " << mass << " within L/8 of the boundary";
  warn(os.str());
  return false;
}

}  // namespace gaborheat
