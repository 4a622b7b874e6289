#pragma once

#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/propagator.hpp"
#include "gaborheat/symbols.hpp"
#include "gaborheat/tfa.hpp"

namespace gaborheat {

/// V = { z : |z/|z| - z0/|z0|| < eps, |z| > 1/eps }.
struct Cone {
  PhasePoint z0;
  double eps;

  Cone(PhasePoint z0, double eps);
  bool contains(PhasePoint z) const noexcept;
};

struct NoncharacteristicResult {
  bool noncharacteristic = false;
  double margin = 0.0;  // min |sym| / (1 + |x| + |xi|)^m over the cone samples
  std::size_t samples = 0;
};

/// Default sample set: [-20, 20]^2 with spacing 20/64.
NoncharacteristicResult noncharacteristic_test(const Symbol& sym, double m, PhasePoint z0, double eps,
                                               double c = 0.1, double t = 0.0);
NoncharacteristicResult noncharacteristic_test(const Symbol& sym, double m, PhasePoint z0, double eps,
                                               const PhaseSampleSet& samples, double c = 0.1, double t = 0.0);

struct WavefrontOptions {
  int angular_n = 16;
  double threshold = 4.0;
  double r_min = 1.0;
  double bin_width = 0.5;
  double lattice_step = 0.25;
};

struct WavefrontEstimate {
  std::vector<double> angles;     // direction angle in the (x, xi) plane
  std::vector<double> exponents;  // fitted radial decay, +inf when below the floor
  std::vector<bool> member;
  std::size_t count() const;
};

/**
 * Radial decay of |V_g f| inside the cone of aperture 2 / angular_n around
 * each direction, over radii in [r_min, L/4]. A direction belongs to the
 * estimate when the fitted exponent is below the threshold.
 */
WavefrontEstimate estimate_wavefront(const GridFunction& f, const GridFunction& g, const WavefrontOptions& opts = {});

/// Directions of `inner` that are not within one angular cell of `outer`.
std::vector<std::size_t> uncovered_directions(const WavefrontEstimate& inner, const WavefrontEstimate& outer);

struct PseudolocalityResult {
  bool contained = false;
  std::vector<std::size_t> extra;  // uncovered directions of the propagated estimate
  WavefrontEstimate before;
  WavefrontEstimate after;
};

PseudolocalityResult pseudolocality_check(const EvolutionProblem& prob, double t, const GridFunction& f,
                                          const GridFunction& g, const WavefrontOptions& opts = {});

}  // namespace gaborheat
