#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/propagator.hpp"
#include "gaborheat/tfa.hpp"

namespace gaborheat {

/// c * u^j * conj(u)^k.
struct Monomial {
  int j = 0;
  int k = 0;
  cplx c = 0.0;
};

/// N(t, x, u) = g(t, x) F(u), F a finite sum of monomials with j + k >= 1.
class Nonlinearity {
 public:
  using Factor = std::function<cplx(double t, double x)>;

  Nonlinearity(Factor g, std::vector<Monomial> terms, bool g_time_independent = true);
  static Nonlinearity zero();
  /// g = 1, F(u) = u^2.
  static Nonlinearity square();

  cplx g(double t, double x) const { return g_(t, x); }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  int degree() const noexcept;
  bool is_zero() const noexcept;
  bool g_time_independent() const noexcept { return g_static_; }

 private:
  Factor g_;
  std::vector<Monomial> terms_;
  bool g_static_;
};

GridFunction eval_nonlinearity(const Nonlinearity& nl, double t, const GridFunction& u);

struct PicardDiagnostics {
  std::vector<double> iterate_gaps;  // of the final (accepted) attempt
  bool converged = false;
  double T0_used = 0.0;
  int restarts = 0;
};

enum class PicardGuess { zero, linear };

struct PicardOptions {
  ModulationNormSpec norm{2.0, 1.0, 0.0};  // q is forced to 1
  double tol = 1e-10;
  int max_iter = 60;
  PicardGuess guess = PicardGuess::linear;
};

struct PicardResult {
  Trajectory trajectory;
  PicardDiagnostics diagnostics;
};

/**
 * Duhamel-Picard iteration on the step times of [0, T0]. The time integral
 * uses the trapezoid rule with the step exponentials of the propagator; T0
 * is halved whenever successive gaps stop decreasing by a factor 0.9 or the
 * iteration budget runs out, down to T / 2^10.
 */
PicardResult picard_solve(const EvolutionProblem& prob, const Nonlinearity& nl, const GridFunction& u0,
                          const PicardOptions& opts = {});

/// max over interior steps of || (u_{i+1} - E u_i)/dt - (E N_i + N_{i+1})/2 ||_{L^2}.
double duhamel_residual(const EvolutionProblem& prob, const Nonlinearity& nl, const Trajectory& tr);

/// sup_t ||u(t) - v(t)||_{M^{p,1}_s} / ||u0 - v0||_{M^{p,1}_s}.
double lipschitz_check(const EvolutionProblem& prob, const Nonlinearity& nl, const GridFunction& u0,
                       const GridFunction& v0, const PicardOptions& opts = {});

/// sup_x |e^{-t x^2} - 1| on the box for each t (u0 = 1, a = x^2, b = 0).
std::vector<double> contro1_check(const Grid& grid, const std::vector<double>& t_list);

struct Contro2Options {
  double samples_per_unit = 25.6;  // n = samples_per_unit * L, rounded to a power of two
  double width_fraction = 0.05;    // Gaussian width lambda = width_fraction * L
  double chirp_time = 1.0;         // multiplier e^{-i t x^2}
};

/// ||e^{-i t x^2} u0||_{M^{p,q}} / ||u0||_{M^{p,q}} (STFT definition) for each L.
std::vector<double> contro2_check(double p, double q, const std::vector<double>& box_sizes,
                                  const Contro2Options& opts = {});

}  // namespace gaborheat
