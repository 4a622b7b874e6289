#include <cmath>

#include "doctest.h"
#include "gaborheat/battery.hpp"
#include "gaborheat/propagator.hpp"
#include "oracles.hpp"

using namespace gaborheat;

namespace {
const Grid kGrid(1, 40.0, 128);

GridFunction gaussian(const Grid& g) {
  return sample(g, [](double x) { return cplx(std::exp(-0.5 * x * x)); });
}

EvolutionProblem problem(const char* a, const char* b, double T = 0.5) {
  return EvolutionProblem(named_symbol(a), named_symbol(b), T, 0.01, kGrid);
}
}  // namespace

TEST_CASE("step times") {
  const auto ts = step_times(0.0, 0.1, 0.03);
  REQUIRE(ts.size() == 5);
  CHECK(ts.back() == 0.1);
  CHECK(step_times(0.2, 0.2, 0.01).size() == 1);
  CHECK_THROWS_AS(step_times(0.3, 0.2, 0.01), Error);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(EvolutionProblem(named_symbol("heat"), named_symbol("zero"), -1.0, 0.01, kGrid), Error);
  CHECK_THROWS_AS(EvolutionProblem(named_symbol("heat"), named_symbol("zero"), 1.0, 0.0, kGrid), Error);
}

TEST_CASE("hypothesis scan") {
  const HypothesisReport ok = check_hypotheses(problem("heat", "drift"));
  CHECK(ok.real_valued());
  CHECK(ok.a_lower_bound >= 0.0);
  CHECK(ok.warnings.empty());
  const HypothesisReport neg = check_hypotheses(
      EvolutionProblem(parse_symbol("xi^2 - 2"), named_symbol("zero"), 0.1, 0.01, kGrid));
  CHECK(neg.a_lower_bound == doctest::Approx(-2.0));
}

TEST_CASE("heat of a gaussian") {
  const Trajectory tr = solve_linear(problem("heat", "zero"), gaussian(kGrid), 0.0, 0.5);
  CHECK(tr.times.size() == 51);
  const GridFunction exact = sample(kGrid, [](double x) { return cplx(oracle::heat_gaussian(0.5, x)); });
  CHECK(sup_norm(tr.states.back() - exact) < 1e-10);
}

TEST_CASE("propagator matrix agrees with the solver") {
  const EvolutionProblem p = problem("degenerate_diffusion", "drift");
  const GridFunction u0 = gaussian_packet(kGrid, 1.0, 1.0, 1.0);
  const GridFunction a = solve_linear(p, u0, 0.1, 0.4).states.back();
  const GridFunction b = propagator_matrix(p, 0.1, 0.4).apply(u0);
  CHECK(sup_norm(a - b) < 1e-10);
  CHECK((propagator_matrix(p, 0.2, 0.2).entries - CMatrix::Identity(128, 128)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("heat propagator is symmetric with spectrum in (0, 1]") {
  const OperatorMatrix S = propagator_matrix(problem("heat", "zero"), 0.0, 0.1);
  CHECK(relative_hermitian_deviation(S.entries) < 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (S.entries + S.entries.adjoint()));
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("self-adjoint a gives a positive semidefinite propagator") {
  const OperatorMatrix S = propagator_matrix(problem("degenerate_diffusion", "zero"), 0.0, 0.2);
  CHECK(relative_hermitian_deviation(S.entries) < 1e-8);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (S.entries + S.entries.adjoint()));
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
}

TEST_CASE("time-dependent symbols") {
  // a = t xi^2 integrates to a heat flow at time t^2 / 2.
  const EvolutionProblem p(parse_symbol("t*xi^2"), named_symbol("zero"), 1.0, 0.05, kGrid);
  const GridFunction u = solve_linear(p, gaussian(kGrid), 0.0, 1.0).states.back();
  const GridFunction exact = sample(kGrid, [](double x) { return cplx(oracle::heat_gaussian(0.5, x)); });
  CHECK(sup_norm(u - exact) < 1e-6);
}

TEST_CASE("blow-up guard") {
  const EvolutionProblem p(parse_symbol("-xi^2"), named_symbol("zero"), 0.1, 0.01, kGrid);
  try {
    solve_linear(p, gaussian(kGrid), 0.0, 0.1);
    FAIL("expected a hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::hypothesis);
  }
}

TEST_CASE("conjugation identity for shifted problems") {
  const EvolutionProblem p = problem("degenerate_diffusion", "drift", 0.2);
  const PhasePoint z{16 * kGrid.spacing(), 3 * kGrid.frequency_spacing()};
  const CMatrix P = phase_shift_matrix(kGrid, z);
  const CMatrix lhs = P.adjoint() * propagator_matrix(p, 0.0, 0.2).entries * P;
  const CMatrix rhs = propagator_matrix(shifted_problem(p, z), 0.0, 0.2).entries;
  CHECK((lhs - rhs).norm() <= 1e-6 * rhs.norm());
}

TEST_CASE("energy uniformity") {
  const GridFunction g = gaussian_window(kGrid);
  SUBCASE("heat is an L2 contraction") {
    const auto C = energy_uniformity(problem("heat", "zero"), 0, g, uniformity_z_set(kGrid, 6.0, 4));
    for (double c : C) CHECK(c <= 1.0 + 1e-6);
  }
  SUBCASE("single baseline entry") {
    CHECK(energy_uniformity(problem("heat", "zero"), 1, g, {PhasePoint{}}).size() == 1);
  }
  SUBCASE("z set is symmetric and within the radius") {
    const auto zs = uniformity_z_set(kGrid, 8.0, 4);
    for (const auto& z : zs) CHECK(norm(z) <= 8.0 + 1e-12);
    CHECK(zs.size() % 2 == 1);
  }
}

TEST_CASE("gabor matrix of the identity") {
  const GridFunction g = gaussian_window(kGrid);
  const PhaseLattice lat = PhaseLattice::interior(kGrid);
  const PhaseSpaceField F = gabor_matrix(identity_operator(kGrid), g, lat);
  for (std::size_t c = 0; c < lat.size(); c += 11)
    for (std::size_t r = 0; r < lat.size(); r += 13) {
      const PhasePoint d = lat.point(r) - lat.point(c);
      // Distances wrap: x with period L, xi with the band width.
      const double dx = std::remainder(d.x, 40.0), dxi = std::remainder(d.xi, 2 * kGrid.nyquist());
      CHECK(std::abs(std::abs(F.values(Eigen::Index(r), Eigen::Index(c))) - std::exp(-0.25 * (dx * dx + dxi * dxi))) < 1e-10);
    }
  const DecayReport rep = decay_fit(F);
  CHECK(rep.fitted_N >= 8.0);
  CHECK(rep.bins.size() == rep.max_abs.size() + 1);
}

TEST_CASE("gabor matrix at t = 0 equals the identity case") {
  const GridFunction g = gaussian_window(kGrid);
  const PhaseLattice lat = PhaseLattice::interior(kGrid);
  const PhaseSpaceField a = gabor_matrix(problem("heat", "zero"), 0.0, g, lat);
  const PhaseSpaceField b = gabor_matrix(identity_operator(kGrid), g, lat);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("heat gabor matrix decays faster than any low power") {
  const Grid g(1, 40.0, 256);
  const EvolutionProblem p(named_symbol("heat"), named_symbol("zero"), 0.1, 0.01, g);
  const PhaseSpaceField F = gabor_matrix(p, 0.1, gaussian_window(g), PhaseLattice::interior(g));
  CHECK(decay_fit(F).fitted_N >= 4.0);
}

TEST_CASE("degenerate diffusion with drift has small far entries") {
  const Grid g(1, 40.0, 256);
  const EvolutionProblem p(named_symbol("degenerate_diffusion"), named_symbol("drift"), 0.1, 0.01, g);
  const PhaseLattice lat = PhaseLattice::interior(g);
  const PhaseSpaceField F = gabor_matrix(p, 0.1, gaussian_window(g), lat);
  double far = 0.0, near = 0.0;
  for (Eigen::Index c = 0; c < F.values.cols(); ++c) near = std::max(near, std::abs(F.values(c, c)));
  for (Eigen::Index c = 0; c < F.values.cols(); ++c)
    for (Eigen::Index r = 0; r < F.values.rows(); ++r)
      if (norm(lat.point(std::size_t(r)) - lat.point(std::size_t(c))) > 10.0) far = std::max(far, std::abs(F.values(r, c)));
  CHECK(far < 1e-4 * near);
}

TEST_CASE("decay fit needs data") {
  const PhaseLattice lat = PhaseLattice::interior(kGrid);
  PhaseSpaceField zero{lat, CMatrix::Zero(Eigen::Index(lat.size()), Eigen::Index(lat.size()))};
  CHECK_THROWS_AS(decay_fit(zero), Error);
}

TEST_CASE("symbol extraction") {
  SUBCASE("identity") {
    const Symbol p = extract_symbol(identity_operator(kGrid));
    for (int j = 0; j < 128; j += 7)
      for (int k = 0; k < 128; k += 5) CHECK(std::abs(p(0, kGrid.x(j), kGrid.xi(k)) - 1.0) < 1e-8);
  }
  SUBCASE("round trip through quantization") {
    const Symbol a = parse_symbol("exp(-x^2/8)*cos(xi) + 0.5*sin(x/2)");
    const OperatorMatrix A = weyl_quantize(a, 0.0, kGrid);
    const Symbol p = extract_symbol(A);
    // Quantization evaluates x through the periodic fold.
    double err = 0.0;
    for (int j = 0; j < 128; ++j)
      for (int k = 0; k < 128; ++k)
        err = std::max(err, std::abs(p(0, kGrid.x(j), kGrid.xi(k)) - a(0, periodic_fold(kGrid.x(j), 40.0), kGrid.xi(k))));
    CHECK(err < 1e-3);
  }
  SUBCASE("translation") {
    const Symbol p = extract_symbol(propagator_matrix(problem("zero", "drift"), 0.0, 0.3));
    for (int j = 16; j < 112; j += 9)
      for (int k = 32; k < 96; k += 7) {
        const double xi = kGrid.xi(k);
        CHECK(std::abs(p(0, kGrid.x(j), xi) - std::exp(cplx(0, -0.3 * xi))) < 1e-5);
      }
  }
}

TEST_CASE("analytic energy") {
  const GridFunction u = gaussian(Grid(1, 40.0, 256));
  CHECK(analytic_energy(u, 0.5, 0) == doctest::Approx(std::pow(l2_norm(u), 2)));
  double prev = 0.0;
  for (int N = 0; N <= 12; ++N) {
    const double e = analytic_energy(u, 0.5, N);
    CHECK(e >= prev);
    CHECK(e == doctest::Approx(oracle::gaussian_analytic_energy(0.5, N)).epsilon(1e-12));
    prev = e;
  }
  CHECK_THROWS_AS(analytic_energy(u, 0.0, 2), Error);
  CHECK_THROWS_AS(analytic_energy(u, 0.5, 13), Error);
}

TEST_CASE("analytic stability") {
  const GridFunction u0 = gaussian(kGrid);
  const auto heat = analytic_stability(problem("heat", "zero"), u0, 0.25, {0, 2, 4, 8});
  for (double r : heat) CHECK(r <= 1.0 + 1e-6);
  const auto zero = analytic_stability(problem("potential_well", "zero"), u0, 0.25, {0});
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] <= 1.0 + 1e-12);
  // |d_x^2 a| = 200 exceeds C^3 2! = 128.
  const EvolutionProblem rough(parse_symbol("100*sin(x)^2"), named_symbol("zero"), 0.1, 0.01, kGrid);
  CHECK_THROWS_AS(analytic_stability(rough, u0, 0.25, {1}), Error);
}
