#include "gaborheat/weyl.hpp"

#include <cmath>
#include <span>

#include "fft.hpp"
#include "gaborheat/error.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

GridFunction OperatorMatrix::apply(const GridFunction& f) const {
  require(f.grid() == grid, "grid mismatch");
  return GridFunction(grid, entries * f.values());
}

OperatorMatrix identity_operator(const Grid& grid) {
  const auto n = Eigen::Index(grid.samples());
  return {grid, CMatrix::Identity(n, n), 0.0};
}

double relative_hermitian_deviation(const CMatrix& a) {
  const double scale = a.norm();
  if (scale == 0.0) return 0.0;
  return (a - a.adjoint()).norm() / scale;
}

double periodic_fold(double x, double L) {
  const double p = L / 3.0, w = L / 24.0, slope = 2.0;
  const double y = x - L * std::floor(x / L + 0.5);
  const double u = std::abs(y) - p;
  double g;
  if (u <= -w)
    g = -u;
  else if (u >= w)
    g = slope * u;
  else
    g = 0.5 * (slope - 1.0) * u + 0.25 * (slope + 1.0) * (u * u / w + w);
  return std::copysign(p - g, y);
}

OperatorMatrix weyl_quantize(const Symbol& sym, double t, const Grid& grid) {
  require(grid.dim() == 1, "Weyl quantization is implemented for d = 1");
  const int n = grid.samples();
  const double h = grid.spacing();
  const PhasePoint shift = sym.offset();
  const double band = 2.0 * grid.nyquist();

  // Column c holds the kernel at midpoint x_0 + c h / 2; entry (j, k) uses the
  // nearest periodic image, so j - k is wrapped into [-n/2, n/2].
  std::vector<std::vector<cplx>> cols(std::size_t(2 * n), std::vector<cplx>(std::size_t(n)));
  parallel_for(std::size_t(2 * n), [&](std::size_t c) {
    const double mid = periodic_fold(-0.5 * grid.length() + 0.5 * double(c) * h + shift.x, grid.length());
    auto& col = cols[c];
    for (int k = 0; k < n; ++k) {
      const double xi = grid.xi(k) + shift.xi;
      col[std::size_t(k)] = sym.base(t, mid, xi - band * std::floor((xi + 0.5 * band) / band));
      if (!std::isfinite(col[std::size_t(k)].real()) || !std::isfinite(col[std::size_t(k)].imag()))
        fail(ErrorKind::numerical, "symbol '" + sym.name() + "' is not finite at a quantization midpoint");
    }
    detail::fft_inplace(col, 1, n, +1);
  });

  CMatrix a = CMatrix::Zero(n, n);
  for (int c = 0; c < 2 * n; ++c) {
    for (int delta = -n / 2 + ((c + n / 2) & 1); delta <= n / 2; delta += 2) {
      const int k = (((c - delta) / 2) % n + n) % n;
      const int j = (k + delta + n) % n;
      const double weight = (delta == -n / 2 || delta == n / 2) ? 0.5 : 1.0;
      const double sign = (delta & 1) ? -1.0 : 1.0;
      a(j, k) += weight * sign * cols[std::size_t(c)][std::size_t((delta + n) % n)] / double(n);
    }
  }

  OperatorMatrix op{grid, std::move(a), 0.0};
  if (sym.real_valued()) {
    op.hermitian_deviation = relative_hermitian_deviation(op.entries);
    CMatrix sym_part = 0.5 * (op.entries + op.entries.adjoint());
    op.entries = std::move(sym_part);
  }
  return op;
}

CMatrix phase_shift_matrix(const Grid& grid, PhasePoint z) {
  require(grid.dim() == 1, "phase shifts are implemented for d = 1");
  const long n = grid.samples();
  const long s = grid.nearest_offset(z.x);
  CMatrix p = CMatrix::Zero(n, n);
  for (long j = 0; j < n; ++j) p(j, ((j - s) % n + n) % n) = std::polar(1.0, z.xi * grid.x(int(j)));
  return p;
}

double garding_constant(const OperatorMatrix& L, int k, const std::vector<GridFunction>& battery) {
  require(!battery.empty(), "quadratic-form battery is empty");
  double worst = -std::numeric_limits<double>::infinity();
  for (const GridFunction& u : battery) {
    const GridFunction Lu = L.apply(u);
    for (WeightSide side : {WeightSide::frequency, WeightSide::space}) {
      const GridFunction wu = weight_apply(u, {k, side});
      const double denom = std::pow(l2_norm(wu), 2);
      if (!(denom > 0.0)) fail(ErrorKind::invalid_argument, "battery member has zero weighted norm");
      const GridFunction wLu = weight_apply(Lu, {k, side});
      worst = std::max(worst, -inner(wLu, wu).real() / denom);
    }
  }
  return worst;
}

double garding_constant(const Symbol& a, const Symbol& b, int k, double t, const std::vector<GridFunction>& battery) {
  require(!battery.empty(), "quadratic-form battery is empty");
  const Grid& grid = battery.front().grid();
  for (const auto& u : battery) check_numerically_supported(u, "battery member");
  const OperatorMatrix A = weyl_quantize(a, t, grid);
  const OperatorMatrix B = weyl_quantize(b, t, grid);
  OperatorMatrix L{grid, A.entries + cplx(0.0, 1.0) * B.entries, 0.0};
  return garding_constant(L, k, battery);
}

}  // namespace gaborheat
