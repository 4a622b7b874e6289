#include <cmath>

#include "doctest.h"
#include "gaborheat/battery.hpp"
#include "gaborheat/semilinear.hpp"
#include "oracles.hpp"

using namespace gaborheat;

namespace {
const Grid kGrid(1, 40.0, 128);

GridFunction gaussian(double c = 1.0) {
  return sample(kGrid, [c](double x) { return cplx(c * std::exp(-0.5 * x * x)); });
}
}  // namespace

TEST_CASE("nonlinearity evaluation") {
  CHECK(sup_norm(eval_nonlinearity(Nonlinearity::square(), 0.0, GridFunction(kGrid))) == 0.0);
  const GridFunction sq = eval_nonlinearity(Nonlinearity::square(), 0.0, gaussian());
  CHECK(sup_norm(sq - sample(kGrid, [](double x) { return cplx(std::exp(-x * x)); })) < 1e-15);
  const Nonlinearity cubic([](double, double) { return cplx(1.0); }, {{2, 1, 1.0}});
  const GridFunction u = cplx(0, 1) * gaussian();
  const GridFunction expect = sample(kGrid, [](double x) { return cplx(0.0, std::exp(-1.5 * x * x)); });
  CHECK(sup_norm(eval_nonlinearity(cubic, 0.0, u) - expect) < 1e-15);
  CHECK(cubic.degree() == 3);
  CHECK(Nonlinearity::zero().is_zero());
  CHECK_THROWS_AS(Nonlinearity([](double, double) { return cplx(1.0); }, {{0, 0, 1.0}}), Error);
}

TEST_CASE("zero nonlinearity reproduces the linear solver") {
  const EvolutionProblem p(named_symbol("heat"), named_symbol("zero"), 0.3, 0.01, kGrid);
  const PicardResult r = picard_solve(p, Nonlinearity::zero(), gaussian());
  const Trajectory lin = solve_linear(p, gaussian(), 0.0, 0.3);
  CHECK(r.diagnostics.converged);
  CHECK(r.diagnostics.iterate_gaps.size() <= 2);
  CHECK(sup_norm(r.trajectory.states.back() - lin.states.back()) < 1e-12);
}

TEST_CASE("flat data follows the scalar ODE") {
  const EvolutionProblem p(named_symbol("zero"), named_symbol("zero"), 0.5, 0.01, kGrid);
  const PicardResult r = picard_solve(p, Nonlinearity::square(), sample(kGrid, [](double) { return cplx(0.25); }));
  REQUIRE(r.diagnostics.converged);
  for (std::size_t i = 0; i < r.trajectory.times.size(); ++i) {
    const double t = r.trajectory.times[i];
    CHECK(std::abs(r.trajectory.states[i][5] - 0.25 / (1 - 0.25 * t)) < 1e-5);
  }
}

TEST_CASE("large data forces a shorter local time") {
  const EvolutionProblem p(named_symbol("zero"), named_symbol("zero"), 1.0, 0.01, kGrid);
  const PicardResult r = picard_solve(p, Nonlinearity::square(), sample(kGrid, [](double) { return cplx(3.0); }));
  CHECK(r.diagnostics.converged);
  CHECK(r.diagnostics.T0_used < 1.0);
  CHECK(r.diagnostics.restarts >= 1);
}

TEST_CASE("heat plus square against the direct integrator") {
  const EvolutionProblem p(named_symbol("heat"), named_symbol("zero"), 0.3, 0.01, kGrid);
  const GridFunction u0 = gaussian(0.1);
  const PicardResult r = picard_solve(p, Nonlinearity::square(), u0);
  REQUIRE(r.diagnostics.converged);
  CHECK(l2_norm(r.trajectory.states.back() - oracle::heat_square_direct(u0, 0.3, 0.01 / 16)) < 1e-4);
  CHECK(oracle::max_gap_ratio(r.diagnostics.iterate_gaps) < 0.9);
  CHECK(duhamel_residual(p, Nonlinearity::square(), r.trajectory) < 1e-8);
}

TEST_CASE("zero initial guess converges to the same limit") {
  const EvolutionProblem p(named_symbol("heat"), named_symbol("zero"), 0.2, 0.01, kGrid);
  PicardOptions zero;
  zero.guess = PicardGuess::zero;
  const PicardResult a = picard_solve(p, Nonlinearity::square(), gaussian(0.1));
  const PicardResult b = picard_solve(p, Nonlinearity::square(), gaussian(0.1), zero);
  CHECK(sup_norm(a.trajectory.states.back() - b.trajectory.states.back()) < 1e-9);
}

TEST_CASE("nonconvergence is reported") {
  const EvolutionProblem p(named_symbol("zero"), named_symbol("zero"), 1.0, 0.01, kGrid);
  PicardOptions opts;
  opts.max_iter = 2;
  opts.tol = 1e-14;
  try {
    picard_solve(p, Nonlinearity::square(), sample(kGrid, [](double) { return cplx(1.0); }), opts);
    FAIL("expected nonconvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::nonconvergence);
  }
}

TEST_CASE("Lipschitz ratios") {
  const EvolutionProblem p(named_symbol("heat"), named_symbol("zero"), 0.3, 0.01, kGrid);
  CHECK(lipschitz_check(p, Nonlinearity::zero(), gaussian(), gaussian(1.01)) <= 1.0 + 1e-6);
  CHECK(lipschitz_check(p, Nonlinearity::square(), gaussian(0.1), gaussian(0.1001)) <= 1.1);
  CHECK_THROWS_AS(lipschitz_check(p, Nonlinearity::square(), gaussian(), gaussian()), Error);
}

TEST_CASE("contro1 sup values") {
  const auto s = contro1_check(Grid(1, 40.0, 256), {0.0, 0.1, 1.0, 2.0});
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(1.0 - std::exp(-40.0)));
  CHECK(std::abs(s[2] - 1.0) < 1e-12);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1]);
}

TEST_CASE("contro2 norm ratios") {
  const auto ctrl = contro2_check(2.0, 2.0, {20.0, 40.0});
  for (double r : ctrl) CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
  const auto grow = contro2_check(INFINITY, 1.0, {20.0, 40.0, 80.0});
  CHECK(grow[1] > grow[0]);
  CHECK(grow[2] > grow[1]);
}
