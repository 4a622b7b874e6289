#include <cmath>

#include "doctest.h"
#include "gaborheat/battery.hpp"
#include "gaborheat/weyl.hpp"
#include "oracles.hpp"

using namespace gaborheat;

TEST_CASE("quantization of constants and Fourier multipliers") {
  const Grid g(1, 20.0, 128);
  CHECK((weyl_quantize(constant_symbol(2.5), 0.0, g).entries - 2.5 * CMatrix::Identity(128, 128))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const GridFunction f = gaussian_packet(g, -1.0, 1.0, 1.5);
  const GridFunction hf = weyl_quantize(named_symbol("heat"), 0.0, g).apply(f);
  const CVector ref = oracle::naive_multiplier(f, [](double xi) { return cplx(xi * xi); });
  CHECK((hf.values() - ref).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("quantization of a multiplication operator is diagonal") {
  const Grid g(1, 20.0, 64);
  const OperatorMatrix A = weyl_quantize(named_symbol("potential_well"), 0.0, g);
  for (int j = 0; j < 64; ++j)
    for (int k = 0; k < 64; ++k) {
      const double expect = j == k ? std::pow(std::sin(periodic_fold(g.x(j), 20.0)), 2) : 0.0;
      CHECK(std::abs(A.entries(j, k) - expect) < 1e-12);
    }
  for (int j = 0; j < 64; ++j)
    if (std::abs(g.x(j)) <= 20.0 / 3 - 20.0 / 24)
      CHECK(std::abs(A.entries(j, j) - std::pow(std::sin(g.x(j)), 2)) < 1e-12);
}

TEST_CASE("periodic fold") {
  const double L = 24.0;
  for (double x = -30.0; x <= 30.0; x += 0.01) {
    CHECK(periodic_fold(-x, L) == doctest::Approx(-periodic_fold(x, L)));
    CHECK(periodic_fold(x + L, L) == doctest::Approx(periodic_fold(x, L)));
    CHECK(std::abs(periodic_fold(x, L)) <= L / 3 + 1e-12);
    const double e = 1e-6;
    CHECK(std::abs(periodic_fold(x + e, L) - periodic_fold(x - e, L)) < 4.01 * e);
  }
  CHECK(periodic_fold(7.0, L) == 7.0);
  CHECK(periodic_fold(12.0, L) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Weyl symbol x xi is the symmetrized product") {
  // (x xi)^w = (x D + D x) / 2.
  const Grid g(1, 40.0, 256);
  const GridFunction f = gaussian_packet(g, 0.5, 1.0, 1.0);
  const GridFunction lhs = weyl_quantize(parse_symbol("x*xi"), 0.0, g).apply(f);
  auto D = [&](const GridFunction& u) {
    return GridFunction(g, oracle::naive_multiplier(u, [](double xi) { return cplx(xi); }));
  };
  auto X = [&](const GridFunction& u) {
    GridFunction out = u;
    for (int j = 0; j < g.samples(); ++j) out[std::size_t(j)] *= g.x(j);
    return out;
  };
  const GridFunction rhs = 0.5 * (X(D(f)) + D(X(f)));
  // x is not periodic, so compare away from the box edge.
  double err = 0.0;
  for (int j = 0; j < g.samples(); ++j)
    if (std::abs(g.x(j)) <= 10.0) err = std::max(err, std::abs(lhs[std::size_t(j)] - rhs[std::size_t(j)]));
  CHECK(err < 1e-8);
}

TEST_CASE("real symbols quantize to Hermitian matrices") {
  const Grid g(1, 40.0, 128);
  for (const char* s : {"heat", "degenerate_diffusion", "x*xi", "sin(x)*xi^2 + cos(xi)"}) {
    CAPTURE(s);
    const OperatorMatrix A = weyl_quantize(parse_symbol(s), 0.0, g);
    CHECK(A.hermitian_deviation < 1e-10);
    CHECK(relative_hermitian_deviation(A.entries) < 1e-15);
  }
}

TEST_CASE("quantization is linear") {
  const Grid g(1, 20.0, 64);
  const Symbol a = parse_symbol("x*xi"), b = named_symbol("degenerate_diffusion");
  const CMatrix lhs = weyl_quantize(cplx(2.0) * a + b, 0.0, g).entries;
  const CMatrix rhs = 2.0 * weyl_quantize(a, 0.0, g).entries + weyl_quantize(b, 0.0, g).entries;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("shift covariance for lattice-aligned shifts") {
  const Grid g(1, 40.0, 128);
  const Symbol a = named_symbol("degenerate_diffusion") + parse_symbol("cos(x)*xi");
  for (PhasePoint z : {PhasePoint{g.spacing() * 8, 0.0}, PhasePoint{0.0, 5 * g.frequency_spacing()},
                       PhasePoint{-g.spacing() * 24, -7 * g.frequency_spacing()}}) {
    const CMatrix P = phase_shift_matrix(g, z);
    const CMatrix lhs = weyl_quantize(shift_symbol(a, z), 0.0, g).entries;
    const CMatrix rhs = P.adjoint() * weyl_quantize(a, 0.0, g).entries * P;
    CHECK((lhs - rhs).norm() <= 1e-6 * rhs.norm());
  }
}

TEST_CASE("periodic fold") {
  const double L = 40.0;
  CHECK(periodic_fold(3.0, L) == 3.0);
  CHECK(periodic_fold(-11.0, L) == -11.0);
  CHECK(periodic_fold(20.0, L) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(periodic_fold(19.0 + L, L) == doctest::Approx(periodic_fold(19.0, L)));
  // C^1 across the turnaround.
  const double p = L / 3.0, w = L / 24.0;
  for (double x : {p - w, p + w}) {
    const double left = (periodic_fold(x, L) - periodic_fold(x - 1e-6, L)) / 1e-6;
    const double right = (periodic_fold(x + 1e-6, L) - periodic_fold(x, L)) / 1e-6;
    CHECK(left == doctest::Approx(right).epsilon(1e-4));
  }
}

TEST_CASE("Garding constants") {
  const Grid g(1, 40.0, 256);
  const auto battery = garding_battery(g);
  CHECK(garding_constant(named_symbol("heat"), named_symbol("zero"), 0, 0.0, battery) <= 1e-8);
  CHECK(garding_constant(named_symbol("zero"), named_symbol("drift"), 0, 0.0, battery) <= 1e-8);
  SUBCASE("adding a real constant to b is a skew perturbation") {
    const double c0 = garding_constant(named_symbol("degenerate_diffusion"), named_symbol("drift"), 1, 0.0, battery);
    const double c1 = garding_constant(named_symbol("degenerate_diffusion"),
                                       named_symbol("drift") + constant_symbol(3.0), 1, 0.0, battery);
    CHECK(std::abs(c0 - c1) <= 1e-8);
  }
  SUBCASE("a negative constant shifts C by its size") {
    CHECK(garding_constant(constant_symbol(-2.0), named_symbol("zero"), 0, 0.0, battery) ==
          doctest::Approx(2.0));
  }
}
