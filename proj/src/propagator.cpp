#include "gaborheat/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "fft.hpp"
#include "gaborheat/error.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

EvolutionProblem::EvolutionProblem(Symbol a_, Symbol b_, double T_, double dt_, Grid grid_)
    : a(std::move(a_)), b(std::move(b_)), T(T_), dt(dt_), grid(grid_) {
  require(grid.dim() == 1, "evolution problems are implemented for d = 1");
  require(T > 0.0 && std::isfinite(T), "final time T must be positive");
  require(dt > 0.0 && dt <= T, "time step must satisfy 0 < dt <= T");
}

namespace {

std::vector<double> time_samples(double T, int count) {
  std::vector<double> ts;
  for (int i = 0; i < count; ++i) ts.push_back(count == 1 ? 0.0 : T * i / (count - 1));
  return ts;
}

double max_in_orders(const SymbolClassReport& rep, int lo, int hi) {
  double m = 0.0;
  for (int k = lo; k <= hi && k <= rep.max_order; ++k) m = std::max(m, rep.max_of_order(k));
  return m;
}

// Samples of the whole grid and of its central half, at matching spacings.
std::pair<PhaseSampleSet, PhaseSampleSet> nested_sample_sets(const Grid& grid) {
  const int stride = std::max(1, grid.samples() / 128);
  const double dx = grid.spacing() * stride;
  const double dxi = grid.frequency_spacing() * stride;
  const PhaseSampleSet full = PhaseSampleSet::box(0.5 * grid.length() - dx, grid.nyquist() - dxi, dx, dxi);
  const PhaseSampleSet half = PhaseSampleSet::box(0.25 * grid.length(), 0.5 * grid.nyquist(), dx, dxi);
  return {full, half};
}

}  // namespace

HypothesisReport check_hypotheses(const EvolutionProblem& prob, int time_samples_count) {
  require(time_samples_count >= 1, "at least one time sample is required");
  const auto ts = time_samples(prob.T, time_samples_count);
  const auto [full, half] = nested_sample_sets(prob.grid);
  const auto ra = seminorm_estimate(prob.a, full, ts, 4);
  const auto rb = seminorm_estimate(prob.b, full, ts, 4);
  const auto ra_half = seminorm_estimate(prob.a, half, ts, 4);
  const auto rb_half = seminorm_estimate(prob.b, half, ts, 4);

  HypothesisReport rep;
  rep.a_lower_bound = ra.lower_bound;
  rep.a_second_order = max_in_orders(ra, 2, 4);
  rep.b_first_order = max_in_orders(rb, 1, 4);
  rep.max_imag = std::max(ra.max_imag, rb.max_imag);
  rep.continuity_jump = std::max(ra.continuity_jump, rb.continuity_jump);

  auto grows = [](double whole, double part) { return whole > 1.5 * part + 1e-9; };
  if (!rep.real_valued()) rep.warnings.push_back("symbols a, b must be real-valued");
  if (grows(rep.a_second_order, max_in_orders(ra_half, 2, 4)))
    rep.warnings.push_back("derivatives of a of order >= 2 grow with the sample box (hypothesis (i))");
  if (grows(rep.b_first_order, max_in_orders(rb_half, 1, 4)))
    rep.warnings.push_back("derivatives of b of order >= 1 grow with the sample box (hypothesis (iii))");
  if (time_samples_count > 1) {
    const double step = prob.T / (time_samples_count - 1);
    const double scale = std::max({1.0, ra.entry(0, 0), rb.entry(0, 0)});
    if (rep.continuity_jump > 0.5 * scale && step < 1.0)
      rep.warnings.push_back("symbols vary sharply in time between samples (hypothesis (iv))");
  }
  for (const auto& w : rep.warnings) warn(w);
  return rep;
}

std::vector<double> step_times(double sigma, double t, double dt) {
  require(t >= sigma, "final time precedes initial time");
  require(dt > 0.0, "time step must be positive");
  std::vector<double> out{sigma};
  if (t == sigma) return out;
  const long steps = std::max(1L, long(std::ceil((t - sigma) / dt - 1e-9)));
  for (long i = 1; i < steps; ++i) out.push_back(sigma + (t - sigma) * double(i) / double(steps));
  out.push_back(t);
  return out;
}

namespace {

double lowest_real_symbol_value(const EvolutionProblem& prob) {
  const auto [full, half] = nested_sample_sets(prob.grid);
  (void)half;
  const auto rep = seminorm_estimate(prob.a, full, time_samples(prob.T, prob.a.time_independent() ? 1 : 5), 0);
  return rep.lower_bound;
}

}  // namespace

StepExponentials::StepExponentials(const EvolutionProblem& prob)
    : prob_(&prob), c0_(std::max(0.0, -lowest_real_symbol_value(prob))) {}

const CMatrix& StepExponentials::step(double t0, double t1) {
  const double h = t1 - t0;
  const double mid = 0.5 * (t0 + t1);
  const bool frozen = prob_->a.time_independent() && prob_->b.time_independent();
  if (cached_h_ >= 0.0 && std::abs(h - cached_h_) <= 1e-14 * std::max(1.0, h) &&
      (frozen || mid == cached_mid_))
    return cached_;

  const OperatorMatrix A = weyl_quantize(prob_->a, mid, prob_->grid);
  const OperatorMatrix B = weyl_quantize(prob_->b, mid, prob_->grid);
  const CMatrix herm = 0.5 * (A.entries + A.entries.adjoint());
  const double lambda_min = Eigen::SelfAdjointEigenSolver<CMatrix>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lambda_min < -(c0_ + prob_->garding_slack)) {
    std::ostringstream os;
    os << "blow-up guard: lowest eigenvalue of a^w is " << lambda_min << " below -(C0 + slack) = "
       << -(c0_ + prob_->garding_slack);
    fail(ErrorKind::hypothesis, os.str());
  }
  const CMatrix M = A.entries + cplx(0.0, 1.0) * B.entries;
  cached_ = (-h * M).exp();
  if (!cached_.allFinite()) fail(ErrorKind::numerical, "matrix exponential overflowed");
  cached_h_ = h;
  cached_mid_ = mid;
  return cached_;
}

namespace {

struct Evolution {
  std::vector<double> times;
  std::vector<CMatrix> states;  // only the final one unless recorded
};

Evolution evolve_fixed(const EvolutionProblem& prob, StepExponentials& steps, const CMatrix& x0, double sigma,
                       double t, double dt, bool record) {
  Evolution ev;
  ev.times = step_times(sigma, t, dt);
  CMatrix x = x0;
  if (record) ev.states.push_back(x);
  for (std::size_t i = 1; i < ev.times.size(); ++i) {
    x = steps.step(ev.times[i - 1], ev.times[i]) * x;
    if (record) ev.states.push_back(x);
  }
  if (!record) ev.states.push_back(std::move(x));
  (void)prob;
  return ev;
}

constexpr int kMaxHalvings = 4;

// L^2 distance for vectors, Frobenius / sqrt(n) for matrices.
double state_distance(const CMatrix& a, const CMatrix& b, const Grid& grid) {
  const double scale = a.cols() == 1 ? std::sqrt(grid.spacing()) : 1.0 / std::sqrt(double(a.cols()));
  return scale * (a - b).norm();
}

Evolution evolve(const EvolutionProblem& prob, const CMatrix& x0, double sigma, double t, bool record) {
  require(sigma >= -1e-12 && t <= prob.T * (1.0 + 1e-12) + 1e-12, "times must lie in [0, T]");
  require(sigma <= t, "final time precedes initial time");
  StepExponentials steps(prob);
  double dt = prob.dt;
  Evolution ev = evolve_fixed(prob, steps, x0, sigma, t, dt, record);
  if (prob.a.time_independent() && prob.b.time_independent()) return ev;
  for (int k = 0; k < kMaxHalvings; ++k) {
    dt *= 0.5;
    Evolution finer = evolve_fixed(prob, steps, x0, sigma, t, dt, record);
    const double gap = state_distance(finer.states.back(), ev.states.back(), prob.grid);
    ev = std::move(finer);
    if (gap <= 1e-6) return ev;
  }
  std::ostringstream os;
  os << "time-step refinement stopped at dt = " << dt << " before successive runs agreed to 1e-6";
  warn(os.str());
  return ev;
}

}  // namespace

Trajectory solve_linear(const EvolutionProblem& prob, const GridFunction& u0, double sigma, double t) {
  require(u0.grid() == prob.grid, "initial datum grid differs from the problem grid");
  check_numerically_supported(u0, "initial datum");
  Evolution ev = evolve(prob, u0.values(), sigma, t, true);
  Trajectory tr;
  tr.times = std::move(ev.times);
  for (auto& s : ev.states) tr.states.emplace_back(prob.grid, CVector(s.col(0)));
  return tr;
}

OperatorMatrix propagator_matrix(const EvolutionProblem& prob, double sigma, double t) {
  const auto n = Eigen::Index(prob.grid.samples());
  Evolution ev = evolve(prob, CMatrix::Identity(n, n), sigma, t, false);
  return {prob.grid, std::move(ev.states.back()), 0.0};
}

EvolutionProblem shifted_problem(const EvolutionProblem& prob, PhasePoint z) {
  EvolutionProblem out(shift_symbol(prob.a, z), shift_symbol(prob.b, z), prob.T, prob.dt, prob.grid);
  out.garding_slack = prob.garding_slack;
  return out;
}

std::vector<double> energy_uniformity(const EvolutionProblem& prob, int k, const GridFunction& g,
                                      const std::vector<PhasePoint>& z_set) {
  require(!z_set.empty(), "z set is empty");
  check_numerically_supported(g, "window");
  const double base = sobolev_q_norm(g, k);
  require(base > 0.0, "window has zero norm");
  std::vector<double> out(z_set.size(), 0.0);
  parallel_for(z_set.size(), [&](std::size_t i) {
    const EvolutionProblem shifted = shifted_problem(prob, z_set[i]);
    const Trajectory tr = solve_linear(shifted, g, 0.0, prob.T);
    double worst = 0.0;
    for (const auto& u : tr.states) worst = std::max(worst, sobolev_q_norm(u, k) / base);
    out[i] = worst;
  });
  return out;
}

std::vector<PhasePoint> uniformity_z_set(const Grid& grid, double radius, int stride) {
  require(stride >= 1, "stride must be positive");
  const PhaseLattice lat(grid, 0.5, 0.5, radius, radius, radius);
  std::vector<PhasePoint> out;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& nd = lat.nodes()[i];
    if (nd.ix % stride == 0 && nd.ixi % stride == 0) out.push_back(lat.point(i));
  }
  return out;
}

PhaseSpaceField gabor_matrix(const OperatorMatrix& S, const GridFunction& g, const PhaseLattice& lattice) {
  require(S.grid == g.grid() && g.grid() == lattice.grid(), "grid mismatch");
  const std::size_t m = lattice.size();
  CMatrix values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  parallel_for(m, [&](std::size_t c) {
    const GridFunction moved = S.apply(phase_shift(g, lattice.point(c)));
    const PhaseSpaceField col = stft(moved, g, lattice);
    values.col(Eigen::Index(c)) = col.values.col(0);
  });
  return {lattice, std::move(values)};
}

PhaseSpaceField gabor_matrix(const EvolutionProblem& prob, double t, const GridFunction& g,
                             const PhaseLattice& lattice) {
  return gabor_matrix(propagator_matrix(prob, 0.0, t), g, lattice);
}

namespace {

template <class Accept>
DecayReport fit_decay(const PhaseSpaceField& field, double bin_width, Accept&& accept) {
  require(field.is_matrix() || field.values.rows() == 1, "decay fit requires a matrix-type field");
  require(bin_width > 0.0, "bin width must be positive");
  const PhaseLattice& lat = field.lattice;
  const Eigen::Index m = field.values.rows();
  double rmax = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) rmax = std::max(rmax, norm(lat.point(std::size_t(i)) - lat.point(std::size_t(j))));
  const std::size_t nb = std::size_t(std::floor(rmax / bin_width)) + 1;
  std::vector<double> best(nb, 0.0), at(nb, 0.0);
  for (Eigen::Index c = 0; c < field.values.cols(); ++c) {
    const PhasePoint z = lat.point(std::size_t(c));
    for (Eigen::Index r = 0; r < m; ++r) {
      const PhasePoint d = lat.point(std::size_t(r)) - z;
      if (!accept(d)) continue;
      const double dist = norm(d);
      const std::size_t b = std::min(nb - 1, std::size_t(dist / bin_width));
      const double v = std::abs(field.values(r, c));
      if (v > best[b]) {
        best[b] = v;
        at[b] = dist;
      }
    }
  }
  DecayReport rep;
  for (std::size_t b = 0; b <= nb; ++b) rep.bins.push_back(b * bin_width);
  rep.max_abs = best;

  // Bins past L/4 are only partly populated even around central z.
  const double fit_radius = 0.25 * lat.grid().length();
  std::vector<double> X, Y;
  for (std::size_t b = 0; b < nb; ++b)
    if (best[b] > 1e-12 && rep.bins[b + 1] <= fit_radius + 1e-9) {
      X.push_back(std::log1p(at[b]));
      Y.push_back(std::log(best[b]));
    }
  rep.used_bins = int(X.size());
  if (X.size() < 3) fail(ErrorKind::numerical, "decay fit needs at least 3 usable bins");
  const double k = double(X.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sx += X[i];
    sy += Y[i];
    sxx += X[i] * X[i];
    sxy += X[i] * Y[i];
  }
  const double denom = k * sxx - sx * sx;
  if (!(denom > 0.0)) fail(ErrorKind::numerical, "decay fit is degenerate");
  const double slope = (k * sxy - sx * sy) / denom;
  const double icpt = (sy - slope * sx) / k;
  double ss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) ss += std::pow(Y[i] - (icpt + slope * X[i]), 2);
  rep.fitted_N = -slope;
  rep.residual = std::sqrt(ss / k);
  return rep;
}

}  // namespace

DecayReport decay_fit(const PhaseSpaceField& field, double bin_width) {
  return fit_decay(field, bin_width, [](PhasePoint) { return true; });
}

DecayReport decay_fit_directional(const PhaseSpaceField& field, double angle, double aperture, double bin_width) {
  require(aperture > 0.0 && aperture < kPi / 2, "aperture must lie in (0, pi/2)");
  return fit_decay(field, bin_width, [=](PhasePoint d) {
    if (norm(d) < 1e-12) return true;
    double diff = std::remainder(std::atan2(d.xi, d.x) - angle, kPi);
    return std::abs(diff) <= aperture;
  });
}

namespace {

// Lagrange weights at 0 for nodes -3.5, ..., 3.5.
std::array<double, 8> half_step_weights() {
  std::array<double, 8> w{};
  for (int i = 0; i < 8; ++i) {
    const double si = i - 3.5;
    double acc = 1.0;
    for (int l = 0; l < 8; ++l)
      if (l != i) acc *= (0.0 - (l - 3.5)) / (si - (l - 3.5));
    w[std::size_t(i)] = acc;
  }
  return w;
}

// Lagrange weights at fractional offset f in [0, 1) for nodes -3, ..., 4.
std::array<double, 8> offset_weights(double f) {
  std::array<double, 8> w{};
  for (int i = 0; i < 8; ++i) {
    double acc = 1.0;
    for (int l = 0; l < 8; ++l)
      if (l != i) acc *= (f - (l - 3)) / double(i - l);
    w[std::size_t(i)] = acc;
  }
  return w;
}

struct SymbolTable {
  Grid grid;
  CMatrix p;  // rows x_j, columns xi_k

  cplx at_x(int j, double fk) const {
    const int n = grid.samples();
    j = ((j % n) + n) % n;
    fk = std::clamp(fk, 0.0, double(n - 1));
    const double k0 = std::floor(fk);
    const double frac = fk - k0;
    if (frac < 1e-9) return p(j, Eigen::Index(k0));
    return (1.0 - frac) * p(j, Eigen::Index(k0)) + frac * p(j, Eigen::Index(k0) + 1);
  }

  cplx operator()(double x, double xi) const {
    const double fx = (x + 0.5 * grid.length()) / grid.spacing();
    double fk = xi / grid.frequency_spacing() + 0.5 * grid.samples();
    if (std::abs(fk - std::round(fk)) < 1e-9) fk = std::round(fk);
    const double jr = std::round(fx);
    if (std::abs(fx - jr) < 1e-9) return at_x(int(jr), fk);
    const double j0 = std::floor(fx);
    const auto w = offset_weights(fx - j0);
    cplx acc = 0.0;
    for (int i = 0; i < 8; ++i) acc += w[std::size_t(i)] * at_x(int(j0) + i - 3, fk);
    return acc;
  }
};

}  // namespace

Symbol extract_symbol(const OperatorMatrix& op) {
  const Grid& grid = op.grid;
  require(grid.dim() == 1, "symbol extraction is implemented for d = 1");
  const int n = grid.samples();
  require(op.entries.rows() == n && op.entries.cols() == n, "operator size does not match its grid");
  const auto wh = half_step_weights();
  auto wrap = [n](long i) { return Eigen::Index(((i % n) + n) % n); };

  auto table = std::make_shared<SymbolTable>(SymbolTable{grid, CMatrix(n, n)});
  parallel_for(std::size_t(n), [&](std::size_t jj) {
    const long j = long(jj);
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (long delta = -n / 2; delta < n / 2; ++delta) {
      cplx kern;
      if (delta % 2 == 0) {
        kern = op.entries(wrap(j + delta / 2), wrap(j - delta / 2));
      } else {
        // Centers m + 1/2 for m = j - 4, ..., j + 3.
        kern = 0.0;
        for (int i = 0; i < 8; ++i) {
          const long m = j - 4 + i;
          const long p = m + (delta + 1) / 2;
          kern += wh[std::size_t(i)] * op.entries(wrap(p), wrap(p - delta));
        }
      }
      const double sign = (delta & 1) ? -1.0 : 1.0;
      v[std::size_t(wrap(delta))] = sign * kern;
    }
    detail::fft_inplace(v, 1, n, -1);
    for (int k = 0; k < n; ++k) table->p(Eigen::Index(j), k) = v[std::size_t(k)];
  });

  return Symbol(
      "extracted", [table](double, double x, double xi) { return (*table)(x, xi); }, true, false);
}

double analytic_energy(const GridFunction& u, double eps, int N) {
  require(eps > 0.0 && eps <= 1.0, "epsilon must lie in (0, 1]");
  require(N >= 0 && N <= 12, "N must lie in [0, 12]");
  require(u.grid().dim() == 1, "analytic energy is implemented for d = 1");
  double total = 0.0;
  double fact = 1.0;
  for (int j = 0; j <= N; ++j) {
    if (j > 0) fact *= j;
    const double d = l2_norm(spectral_derivative(u, {j, 0}));
    total += std::pow(eps, 2 * j) / (fact * fact) * d * d;
  }
  return total;
}

std::vector<double> analytic_stability(const EvolutionProblem& prob, const GridFunction& u0, double eps,
                                       const std::vector<int>& N_values, double C,
                                       const std::vector<double>& c_alpha) {
  require(!N_values.empty(), "N range is empty");
  const auto [full, half] = nested_sample_sets(prob.grid);
  (void)half;
  const auto ts = time_samples(prob.T, prob.a.time_independent() && prob.b.time_independent() ? 1 : 5);
  const auto ca = analytic_bound_check(prob.a, full, ts, C, c_alpha, 4, 2);
  const auto cb = analytic_bound_check(prob.b, full, ts, C, c_alpha, 4, 1);
  if (!ca.holds() || !cb.holds()) {
    std::ostringstream os;
    os << "analytic coefficient bound fails: worst ratio " << std::max(ca.worst_ratio, cb.worst_ratio);
    fail(ErrorKind::hypothesis, os.str());
  }
  const Trajectory tr = solve_linear(prob, u0, 0.0, prob.T);
  std::vector<double> out;
  for (int N : N_values) {
    const double e0 = analytic_energy(u0, eps, N);
    require(e0 > 0.0, "initial datum has zero energy");
    double worst = 0.0;
    for (const auto& u : tr.states) worst = std::max(worst, std::sqrt(analytic_energy(u, eps, N) / e0));
    out.push_back(worst);
  }
  return out;
}

}  // namespace gaborheat
