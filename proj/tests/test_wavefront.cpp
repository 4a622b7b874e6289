#include <cmath>

#include "doctest.h"
#include "gaborheat/battery.hpp"
#include "gaborheat/wavefront.hpp"

using namespace gaborheat;

namespace {
const Grid kGrid(1, 40.0, 512);

GridFunction gaussian() {
  return sample(kGrid, [](double x) { return cplx(std::exp(-0.5 * x * x)); });
}
GridFunction delta() {
  GridFunction d(kGrid);
  d[256] = 1.0 / kGrid.spacing();
  return d;
}
std::vector<std::size_t> members(const WavefrontEstimate& e) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.member.size(); ++i)
    if (e.member[i]) out.push_back(i);
  return out;
}
}  // namespace

TEST_CASE("cones") {
  const Cone c({0.0, 2.0}, 0.25);
  CHECK(c.contains({0.0, 5.0}));
  CHECK_FALSE(c.contains({0.0, 3.0}));
  CHECK_FALSE(c.contains({5.0, 5.0}));
  CHECK_THROWS_AS(Cone({0.0, 0.0}, 0.5), Error);
  CHECK_THROWS_AS(Cone({1.0, 0.0}, 1.5), Error);
}

TEST_CASE("non-characteristic points") {
  const NoncharacteristicResult one = noncharacteristic_test(constant_symbol(1.0), 0.0, {1.0, 1.0}, 0.25);
  CHECK(one.noncharacteristic);
  CHECK(one.margin == doctest::Approx(1.0));
  CHECK(noncharacteristic_test(named_symbol("drift"), 1.0, {0.0, 1.0}, 0.25).noncharacteristic);
  CHECK_FALSE(noncharacteristic_test(named_symbol("drift"), 1.0, {1.0, 0.0}, 0.25).noncharacteristic);
  for (double a = 0.0; a < 2 * kPi; a += kPi / 5)
    CHECK(noncharacteristic_test(parse_symbol("x^2 + xi^2"), 2.0, {std::cos(a), std::sin(a)}, 0.25).noncharacteristic);
  CHECK_THROWS_AS(noncharacteristic_test(constant_symbol(1.0), 0.0, {1.0, 0.0}, 0.01), Error);
}

TEST_CASE("wave front estimates") {
  const GridFunction g = gaussian_window(kGrid);
  CHECK(estimate_wavefront(gaussian(), g).count() == 0);
  const WavefrontEstimate one = estimate_wavefront(sample(kGrid, [](double) { return cplx(1.0); }), g);
  CHECK(one.member[0]);
  CHECK(one.member[8]);
  CHECK_FALSE(one.member[4]);
  const WavefrontEstimate d = estimate_wavefront(delta(), g);
  CHECK(d.member[4]);
  CHECK(d.member[12]);
  CHECK_FALSE(d.member[0]);
  CHECK_THROWS_AS(estimate_wavefront(gaussian(), g, {8}), Error);
}

TEST_CASE("estimates are conic and monotone in the threshold") {
  const GridFunction g = gaussian_window(kGrid);
  const GridFunction f = delta();
  const WavefrontEstimate base = estimate_wavefront(f, g);
  WavefrontOptions doubled;
  doubled.r_min = 2.0;
  CHECK(uncovered_directions(estimate_wavefront(f, g, doubled), base).empty());
  CHECK(uncovered_directions(base, estimate_wavefront(f, g, doubled)).empty());
  WavefrontOptions high;
  high.threshold = 8.0;
  const auto more = members(estimate_wavefront(f, g, high));
  for (std::size_t m : members(base)) CHECK(std::find(more.begin(), more.end(), m) != more.end());
}

TEST_CASE("phase shifts do not move global directions") {
  const GridFunction g = gaussian_window(kGrid);
  const GridFunction f = delta();
  const WavefrontEstimate base = estimate_wavefront(f, g);
  const PhasePoint z{1.5, 6 * kGrid.frequency_spacing()};
  const WavefrontEstimate moved = estimate_wavefront(phase_shift(f, z), g);
  CHECK(uncovered_directions(moved, base).empty());
  CHECK(uncovered_directions(base, moved).empty());
}

TEST_CASE("pseudolocality") {
  const GridFunction g = gaussian_window(kGrid);
  const EvolutionProblem transport(named_symbol("zero"), named_symbol("drift"), 0.5, 0.01, kGrid);
  const EvolutionProblem heat(named_symbol("heat"), named_symbol("zero"), 0.5, 0.01, kGrid);
  CHECK(pseudolocality_check(transport, 0.5, delta(), g).contained);
  const GridFunction one = sample(kGrid, [](double) { return cplx(1.0); });
  const PseudolocalityResult r = pseudolocality_check(heat, 0.5, one, g);
  CHECK(r.contained);
  CHECK(members(r.before) == members(r.after));
  const PseudolocalityResult s = pseudolocality_check(heat, 0.5, delta(), g);
  CHECK(s.contained);
  CHECK(s.after.count() <= s.before.count());
}
