#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/symbols.hpp"
#include "gaborheat/tfa.hpp"
#include "gaborheat/weyl.hpp"

namespace gaborheat {

/// d_t u + a^w u + i b^w u = 0 on [0, T].
struct EvolutionProblem {
  Symbol a;
  Symbol b;
  double T;
  double dt;
  Grid grid;
  // Blow-up guard: lambda_min(a^w) must stay above -(C0 + garding_slack).
  double garding_slack = 1.0;

  EvolutionProblem(Symbol a, Symbol b, double T, double dt, Grid grid);
};

struct HypothesisReport {
  double a_lower_bound = 0.0;    // min a over samples and times
  double a_second_order = 0.0;   // sup of a-derivatives of order 2..4
  double b_first_order = 0.0;    // sup of b-derivatives of order 1..4
  double max_imag = 0.0;         // max |Im a|, |Im b|
  double continuity_jump = 0.0;  // time-sampled modulus of continuity
  std::vector<std::string> warnings;
  bool real_valued() const noexcept { return max_imag <= 1e-12; }
};

/**
 * Empirical scan of hypotheses (i)-(iv) on the grid sample set. Derivative
 * sups that grow when the sample box is doubled are reported as warnings.
 */
HypothesisReport check_hypotheses(const EvolutionProblem& prob, int time_samples = 5);

struct Trajectory {
  std::vector<double> times;
  std::vector<GridFunction> states;
};

/// Uniform step times sigma = t_0 < ... < t_N = t with t_i - t_{i-1} <= dt.
std::vector<double> step_times(double sigma, double t, double dt);

/// Per-step exponentials exp(-(t1 - t0) M(t_mid)), M = a^w + i b^w.
class StepExponentials {
 public:
  explicit StepExponentials(const EvolutionProblem& prob);
  const CMatrix& step(double t0, double t1);
  // Hermitian-part lower bound C0 from the hypothesis scan.
  double lower_bound() const noexcept { return c0_; }

 private:
  const EvolutionProblem* prob_;
  double c0_;
  double cached_h_ = -1.0;
  double cached_mid_ = 0.0;
  CMatrix cached_;
};

/**
 * Exponential midpoint integration of d_t u = -(a^w + i b^w) u. For
 * time-dependent symbols dt is halved until successive runs agree to 1e-6
 * in L^2.
 */
Trajectory solve_linear(const EvolutionProblem& prob, const GridFunction& u0, double sigma, double t);

/// S(t, sigma) as a product of step exponentials.
OperatorMatrix propagator_matrix(const EvolutionProblem& prob, double sigma, double t);

/// Problem with symbols a_z, b_z.
EvolutionProblem shifted_problem(const EvolutionProblem& prob, PhasePoint z);

/// C(z) = max_t ||u_z(t)||_{Q^{2k}} / ||g||_{Q^{2k}} for the shifted problems.
std::vector<double> energy_uniformity(const EvolutionProblem& prob, int k, const GridFunction& g,
                                      const std::vector<PhasePoint>& z_set);

/// Lattice points with |z| <= radius, subsampled by `stride` along both axes.
std::vector<PhasePoint> uniformity_z_set(const Grid& grid, double radius, int stride = 4);

/// <S pi(z) g, pi(w) g>, rows w, columns z.
PhaseSpaceField gabor_matrix(const OperatorMatrix& S, const GridFunction& g, const PhaseLattice& lattice);
PhaseSpaceField gabor_matrix(const EvolutionProblem& prob, double t, const GridFunction& g,
                             const PhaseLattice& lattice);

struct DecayReport {
  std::vector<double> bins;     // bin edges, size = max_abs.size() + 1
  std::vector<double> max_abs;  // per-bin max |entry|
  double fitted_N = 0.0;
  double residual = 0.0;        // RMS of the log-log fit
  int used_bins = 0;
};

/// Per-bin maxima against |w - z| with log(max) = c - N log(1 + r), fitted over
/// bins with max > 1e-12 inside r <= L/4.
DecayReport decay_fit(const PhaseSpaceField& field, double bin_width = 0.5);

/// As decay_fit, restricted to pairs whose w - z lies within `aperture`
/// radians of the line through `angle` (both orientations).
DecayReport decay_fit_directional(const PhaseSpaceField& field, double angle, double aperture = 0.2,
                                  double bin_width = 0.5);

/// Inverse Weyl transform of a grid operator, returned as a tabulated symbol.
Symbol extract_symbol(const OperatorMatrix& op);

/// sum_{j <= N} eps^{2j} / (j!)^2 ||d^j u||^2.
double analytic_energy(const GridFunction& u, double eps, int N);

/// max_t (E_N[u(t)] / E_N[u0])^{1/2} for each N.
std::vector<double> analytic_stability(const EvolutionProblem& prob, const GridFunction& u0, double eps,
                                       const std::vector<int>& N_values, double C = 4.0,
                                       const std::vector<double>& c_alpha = {1.0});

}  // namespace gaborheat
