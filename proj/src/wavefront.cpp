#include "gaborheat/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaborheat/error.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

Cone::Cone(PhasePoint z0_, double eps_) : z0(z0_), eps(eps_) {
  require(norm(z0) > 0.0, "cone direction must be nonzero");
  require(eps > 0.0 && eps < 1.0, "cone parameter must lie in (0, 1)");
}

bool Cone::contains(PhasePoint z) const noexcept {
  const double r = norm(z);
  if (!(r > 1.0 / eps)) return false;
  const double r0 = norm(z0);
  return std::hypot(z.x / r - z0.x / r0, z.xi / r - z0.xi / r0) < eps;
}

NoncharacteristicResult noncharacteristic_test(const Symbol& sym, double m, PhasePoint z0, double eps, double c,
                                               double t) {
  return noncharacteristic_test(sym, m, z0, eps, PhaseSampleSet::box(20.0, 20.0, 20.0 / 64, 20.0 / 64), c, t);
}

NoncharacteristicResult noncharacteristic_test(const Symbol& sym, double m, PhasePoint z0, double eps,
                                               const PhaseSampleSet& samples, double c, double t) {
  require(c > 0.0, "non-characteristic constant must be positive");
  const Cone cone(z0, eps);
  NoncharacteristicResult res;
  res.margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples.nx; ++i)
    for (int k = 0; k < samples.nxi; ++k) {
      const PhasePoint z{samples.x(i), samples.xi(k)};
      if (!cone.contains(z)) continue;
      ++res.samples;
      const double w = std::pow(1.0 + std::abs(z.x) + std::abs(z.xi), m);
      res.margin = std::min(res.margin, std::abs(sym(t, z.x, z.xi)) / w);
    }
  if (res.samples == 0) fail(ErrorKind::invalid_argument, "cone does not meet the sample set (1/eps exceeds the box)");
  res.noncharacteristic = res.margin >= c;
  return res;
}

std::size_t WavefrontEstimate::count() const { return std::size_t(std::count(member.begin(), member.end(), true)); }

WavefrontEstimate estimate_wavefront(const GridFunction& f, const GridFunction& g, const WavefrontOptions& opts) {
  require(opts.angular_n >= 16, "angular grid needs at least 16 directions");
  require(opts.r_min > 0.0 && opts.bin_width > 0.0, "radial range must be positive");
  const Grid& grid = f.grid();
  const double r_max = 0.25 * grid.length();
  require(r_max > opts.r_min, "radial range is empty");
  const PhaseLattice lattice(grid, opts.lattice_step, opts.lattice_step, r_max, r_max, r_max);
  const PhaseSpaceField V = stft(f, g, lattice);
  const double eps = 2.0 / opts.angular_n;
  const double floor = 1e-12 * l2_norm(f) * l2_norm(g);
  const std::size_t nb = std::size_t(std::ceil((r_max - opts.r_min) / opts.bin_width));

  WavefrontEstimate est;
  est.angles.resize(std::size_t(opts.angular_n));
  est.exponents.assign(est.angles.size(), 0.0);
  est.member.assign(est.angles.size(), false);
  std::vector<char> degenerate(est.angles.size(), 0);
  parallel_for(est.angles.size(), [&](std::size_t a) {
    const double theta = 2.0 * kPi * double(a) / opts.angular_n;
    est.angles[a] = theta;
    const PhasePoint dir{std::cos(theta), std::sin(theta)};
    std::vector<double> best(nb, -1.0);
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const PhasePoint z = lattice.point(i);
      const double r = norm(z);
      if (r < opts.r_min || r > r_max) continue;
      if (std::hypot(z.x / r - dir.x, z.xi / r - dir.xi) >= eps) continue;
      const std::size_t b = std::min(nb - 1, std::size_t((r - opts.r_min) / opts.bin_width));
      best[b] = std::max(best[b], std::abs(V.values(Eigen::Index(i), 0)));
    }
    std::vector<double> X, Y;
    bool below_floor = false;
    for (std::size_t b = 0; b < nb; ++b) {
      if (best[b] < 0.0) continue;
      if (best[b] <= floor) {
        below_floor = true;
        continue;
      }
      X.push_back(std::log(opts.r_min + (b + 0.5) * opts.bin_width));
      Y.push_back(std::log(best[b]));
    }
    if (X.size() < 3) {
      if (below_floor)
        est.exponents[a] = std::numeric_limits<double>::infinity();
      else
        degenerate[a] = 1;
      return;
    }
    const double k = double(X.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      sx += X[i];
      sy += Y[i];
      sxx += X[i] * X[i];
      sxy += X[i] * Y[i];
    }
    est.exponents[a] = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
  });
  if (std::any_of(degenerate.begin(), degenerate.end(), [](char c) { return c != 0; }))
    fail(ErrorKind::numerical, "wave front fit has fewer than 3 radii in some direction");
  for (std::size_t a = 0; a < est.angles.size(); ++a) est.member[a] = est.exponents[a] < opts.threshold;
  return est;
}

std::vector<std::size_t> uncovered_directions(const WavefrontEstimate& inner, const WavefrontEstimate& outer) {
  require(inner.angles.size() == outer.angles.size(), "estimates use different angular grids");
  const std::size_t n = inner.angles.size();
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (!inner.member[a]) continue;
    const bool covered = outer.member[a] || outer.member[(a + 1) % n] || outer.member[(a + n - 1) % n];
    if (!covered) out.push_back(a);
  }
  return out;
}

PseudolocalityResult pseudolocality_check(const EvolutionProblem& prob, double t, const GridFunction& f,
                                          const GridFunction& g, const WavefrontOptions& opts) {
  PseudolocalityResult res;
  res.before = estimate_wavefront(f, g, opts);
  const Trajectory tr = solve_linear(prob, f, 0.0, t);
  res.after = estimate_wavefront(tr.states.back(), g, opts);
  res.extra = uncovered_directions(res.after, res.before);
  res.contained = res.extra.empty();
  return res;
}

}  // namespace gaborheat
