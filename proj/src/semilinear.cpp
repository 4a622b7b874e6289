#include "gaborheat/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaborheat/error.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

Nonlinearity::Nonlinearity(Factor g, std::vector<Monomial> terms, bool g_time_independent)
    : g_(std::move(g)), terms_(std::move(terms)), g_static_(g_time_independent) {
  require(bool(g_), "nonlinearity factor g is empty");
  for (const auto& m : terms_) {
    require(m.j >= 0 && m.k >= 0, "monomial exponents must be nonnegative");
    require(m.j + m.k >= 1, "F(0) must vanish: constant monomials are not allowed");
    require(m.j + m.k <= 16, "monomial degree must not exceed 16");
    require(std::isfinite(m.c.real()) && std::isfinite(m.c.imag()), "monomial coefficient must be finite");
  }
}

Nonlinearity Nonlinearity::zero() {
  return Nonlinearity([](double, double) { return cplx(1.0); }, {});
}

Nonlinearity Nonlinearity::square() {
  return Nonlinearity([](double, double) { return cplx(1.0); }, {{2, 0, 1.0}});
}

int Nonlinearity::degree() const noexcept {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.j + m.k);
  return d;
}

bool Nonlinearity::is_zero() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Monomial& m) { return m.c == 0.0; });
}

GridFunction eval_nonlinearity(const Nonlinearity& nl, double t, const GridFunction& u) {
  const Grid& grid = u.grid();
  require(grid.dim() == 1, "nonlinearities are implemented for d = 1");
  GridFunction out(grid);
  if (nl.is_zero()) return out;
  for (int s = 0; s < grid.samples(); ++s) {
    const cplx v = u[s];
    const cplx vb = std::conj(v);
    cplx F = 0.0;
    for (const auto& m : nl.terms()) {
      cplx term = m.c;
      for (int r = 0; r < m.j; ++r) term *= v;
      for (int r = 0; r < m.k; ++r) term *= vb;
      F += term;
    }
    out[s] = F == 0.0 ? cplx(0.0) : nl.g(t, grid.x(s)) * F;
  }
  return out;
}

namespace {

struct Attempt {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> gaps;
  bool converged = false;
};

double gap_norm(const Grid& grid, const CVector& a, const CVector& b, const ModulationNormSpec& spec) {
  return modulation_norm_boxes(GridFunction(grid, a - b), spec);
}

Attempt picard_attempt(const EvolutionProblem& prob, StepExponentials& steps, const Nonlinearity& nl,
                       const GridFunction& u0, double T0, const PicardOptions& opts, const ModulationNormSpec& spec) {
  Attempt at;
  at.times = step_times(0.0, T0, prob.dt);
  const std::size_t m = at.times.size();
  const double dt = m > 1 ? at.times[1] - at.times[0] : 0.0;
  const Grid& grid = prob.grid;

  std::vector<const CMatrix*> E(m, nullptr);
  std::vector<CMatrix> owned;
  if (!(prob.a.time_independent() && prob.b.time_independent())) owned.reserve(m);
  for (std::size_t i = 1; i < m; ++i) {
    const CMatrix& e = steps.step(at.times[i - 1], at.times[i]);
    if (prob.a.time_independent() && prob.b.time_independent()) {
      E[i] = &e;
    } else {
      owned.push_back(e);
      E[i] = &owned.back();
    }
  }

  std::vector<CVector> linear(m);
  linear[0] = u0.values();
  for (std::size_t i = 1; i < m; ++i) linear[i] = (*E[i]) * linear[i - 1];

  std::vector<CVector> u = linear;
  if (opts.guess == PicardGuess::zero)
    for (auto& v : u) v.setZero();

  for (int it = 0; it < opts.max_iter; ++it) {
    std::vector<CVector> N(m);
    parallel_for(m, [&](std::size_t i) { N[i] = eval_nonlinearity(nl, at.times[i], GridFunction(grid, u[i])).values(); });
    std::vector<CVector> next(m);
    CVector P = N[0];
    CVector Q = N[0];
    next[0] = linear[0];
    for (std::size_t i = 1; i < m; ++i) {
      P = (*E[i]) * P + N[i];
      Q = (*E[i]) * Q;
      next[i] = linear[i] + dt * P - 0.5 * dt * (Q + N[i]);
    }
    std::vector<double> per(m, 0.0);
    parallel_for(m, [&](std::size_t i) { per[i] = gap_norm(grid, next[i], u[i], spec); });
    const double gap = *std::max_element(per.begin(), per.end());
    u = std::move(next);
    at.gaps.push_back(gap);
    if (!std::isfinite(gap)) break;
    if (gap < opts.tol) {
      at.converged = true;
      break;
    }
    if (at.gaps.size() >= 2 && gap >= 0.9 * at.gaps[at.gaps.size() - 2]) break;
  }
  at.states = std::move(u);
  return at;
}

}  // namespace

PicardResult picard_solve(const EvolutionProblem& prob, const Nonlinearity& nl, const GridFunction& u0,
                          const PicardOptions& opts) {
  require(u0.grid() == prob.grid, "initial datum grid differs from the problem grid");
  require(opts.tol > 0.0, "tolerance must be positive");
  require(opts.max_iter >= 1, "max_iter must be positive");
  check_numerically_supported(u0, "initial datum");
  ModulationNormSpec spec = opts.norm;
  spec.q = 1.0;

  StepExponentials steps(prob);
  const double floor_T0 = prob.T / 1024.0;
  double T0 = prob.T;
  int restarts = 0;
  for (;;) {
    Attempt at = picard_attempt(prob, steps, nl, u0, T0, opts, spec);
    if (at.converged) {
      PicardResult res;
      res.trajectory.times = at.times;
      for (auto& s : at.states) res.trajectory.states.emplace_back(prob.grid, std::move(s));
      res.diagnostics = {std::move(at.gaps), true, T0, restarts};
      return res;
    }
    if (T0 * 0.5 < floor_T0 * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "Picard iteration did not converge down to T0 = " << T0 << " (last gap "
         << (at.gaps.empty() ? 0.0 : at.gaps.back()) << ")";
      fail(ErrorKind::nonconvergence, os.str());
    }
    T0 *= 0.5;
    ++restarts;
  }
}

double duhamel_residual(const EvolutionProblem& prob, const Nonlinearity& nl, const Trajectory& tr) {
  require(tr.states.size() == tr.times.size() && !tr.states.empty(), "malformed trajectory");
  StepExponentials steps(prob);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < tr.times.size(); ++i) {
    const double dt = tr.times[i + 1] - tr.times[i];
    const CMatrix& E = steps.step(tr.times[i], tr.times[i + 1]);
    const CVector Ni = eval_nonlinearity(nl, tr.times[i], tr.states[i]).values();
    const CVector Nj = eval_nonlinearity(nl, tr.times[i + 1], tr.states[i + 1]).values();
    const CVector r = (tr.states[i + 1].values() - E * tr.states[i].values()) / dt - 0.5 * (E * Ni + Nj);
    worst = std::max(worst, l2_norm(GridFunction(prob.grid, r)));
  }
  return worst;
}

double lipschitz_check(const EvolutionProblem& prob, const Nonlinearity& nl, const GridFunction& u0,
                       const GridFunction& v0, const PicardOptions& opts) {
  ModulationNormSpec spec = opts.norm;
  spec.q = 1.0;
  const double denom = modulation_norm_boxes(u0 - v0, spec);
  if (!(denom > 0.0)) fail(ErrorKind::invalid_argument, "Lipschitz check needs distinct initial data");
  PicardResult ru = picard_solve(prob, nl, u0, opts);
  PicardResult rv = picard_solve(prob, nl, v0, opts);
  const double T0 = std::min(ru.diagnostics.T0_used, rv.diagnostics.T0_used);
  if (ru.diagnostics.T0_used != T0 || rv.diagnostics.T0_used != T0) {
    EvolutionProblem shorter = prob;
    shorter.T = T0;
    shorter.dt = std::min(prob.dt, T0);
    ru = picard_solve(shorter, nl, u0, opts);
    rv = picard_solve(shorter, nl, v0, opts);
  }
  double worst = 0.0;
  const std::size_t m = std::min(ru.trajectory.states.size(), rv.trajectory.states.size());
  for (std::size_t i = 0; i < m; ++i)
    worst = std::max(worst, modulation_norm_boxes(ru.trajectory.states[i] - rv.trajectory.states[i], spec));
  return worst / denom;
}

std::vector<double> contro1_check(const Grid& grid, const std::vector<double>& t_list) {
  require(grid.dim() == 1, "contro1 is implemented for d = 1");
  const Symbol a("x^2", [](double, double x, double) { return cplx(x * x); });
  const OperatorMatrix A = weyl_quantize(a, 0.0, grid);
  std::vector<double> out;
  for (double t : t_list) {
    require(t >= 0.0, "times must be nonnegative");
    double worst = 0.0;
    for (int j = 0; j < grid.samples(); ++j) {
      // u0 = 1 and a^w is diagonal, so S(t, 0) u0 = exp(-t a(x_j)).
      const cplx s = std::exp(-t * A.entries(j, j));
      worst = std::max(worst, std::abs(s - 1.0));
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<double> contro2_check(double p, double q, const std::vector<double>& box_sizes,
                                  const Contro2Options& opts) {
  require(!box_sizes.empty(), "box size list is empty");
  require(opts.samples_per_unit > 0.0 && opts.width_fraction > 0.0, "invalid contro2 options");
  const ModulationNormSpec spec{p, q, 0.0};
  std::vector<double> out;
  for (double L : box_sizes) {
    require(L > 0.0, "box sizes must be positive");
    const int n = 1 << int(std::lround(std::log2(opts.samples_per_unit * L)));
    const Grid grid(1, L, n);
    const double lambda = opts.width_fraction * L;
    const GridFunction u0 = sample(grid, [lambda](double x) { return cplx(std::exp(-0.5 * x * x / (lambda * lambda))); });
    GridFunction v = u0;
    for (int j = 0; j < n; ++j) v[j] *= std::polar(1.0, -opts.chirp_time * grid.x(j) * grid.x(j));
    const GridFunction g = gaussian_window(grid);
    const double base = modulation_norm_stft(u0, g, spec);
    if (!(base > 0.0)) fail(ErrorKind::numerical, "initial datum has zero modulation norm");
    out.push_back(modulation_norm_stft(v, g, spec) / base);
  }
  return out;
}

}  // namespace gaborheat
