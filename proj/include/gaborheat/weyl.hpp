#pragma once

#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/symbols.hpp"
#include "gaborheat/tfa.hpp"

namespace gaborheat {

/// Dense operator on the samples of a 1-d grid.
struct OperatorMatrix {
  Grid grid;
  CMatrix entries;
  // ||A - A*||_F / ||A||_F before any enforced symmetrization.
  double hermitian_deviation = 0.0;

  GridFunction apply(const GridFunction& f) const;
};

OperatorMatrix identity_operator(const Grid& grid);
double relative_hermitian_deviation(const CMatrix& a);

/**
 * Weyl quantization on the grid:
 *   A_{jk} = (1/n) sum_m e^{i (x_j - x_k) xi_m} a(t, (x_j + x_k)/2, xi_m),
 * with x_j - x_k taken for the nearest periodic image (antipodal pairs split
 * between both images) and one inverse DFT per midpoint. Symbols are read at
 * periodic_fold(midpoint). A shifted symbol is read at periodic_fold(mid + x0)
 * and at xi + xi0 wrapped into the grid band, which makes the quantization of
 * shift_symbol(a, z) equal Pi(z)* a^w Pi(z) for lattice-aligned z. Real-valued
 * symbols are symmetrized after the deviation is recorded.
 */
/// Odd, C^1, L-periodic; the identity on |x| <= L/3 - L/24, then back through
/// the box edge with slope -2.
double periodic_fold(double x, double L);

OperatorMatrix weyl_quantize(const Symbol& sym, double t, const Grid& grid);

/// Matrix of the periodic phase shift pi(z) on the grid.
CMatrix phase_shift_matrix(const Grid& grid, PhasePoint z);

/**
 * max over the battery and over E_k(D), E_k(x) of
 *   -Re <E_k L u, E_k u> / ||E_k u||^2,  L = a^w + i b^w.
 */
double garding_constant(const Symbol& a, const Symbol& b, int k, double t, const std::vector<GridFunction>& battery);
double garding_constant(const OperatorMatrix& L, int k, const std::vector<GridFunction>& battery);

}  // namespace gaborheat
