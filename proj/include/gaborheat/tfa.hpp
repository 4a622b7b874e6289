#pragma once

#include <limits>
#include <vector>

#include "gaborheat/grid.hpp"

namespace gaborheat {

/// z = (x, xi) in R^2 (one spatial dimension).
struct PhasePoint {
  double x = 0.0;
  double xi = 0.0;
};

inline PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.x + b.x, a.xi + b.xi}; }
inline PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.x - b.x, a.xi - b.xi}; }
double norm(PhasePoint z);

/**
 * Finite lattice of phase-space points on a 1-d grid.
 *
 * Steps are snapped to whole multiples of the sample spacing h (in x) and of
 * the frequency spacing 2 pi / L (in xi), so every lattice point is an exact
 * grid point and phase shifts by lattice vectors compose exactly.
 */
class PhaseLattice {
 public:
  struct Node {
    int ix;   // lattice index along x
    int ixi;  // lattice index along xi
  };

  // Points with |x| <= x_extent, |xi| <= xi_extent and |z| <= max_radius.
  PhaseLattice(const Grid& grid, double alpha, double beta, double x_extent, double xi_extent,
               double max_radius = std::numeric_limits<double>::infinity());

  // alpha = beta = 1/2 over the whole box and frequency range.
  static PhaseLattice covering(const Grid& grid, double alpha = 0.5, double beta = 0.5);
  // alpha = beta = 1/2 restricted to |z| <= L/4.
  static PhaseLattice interior(const Grid& grid, double alpha = 0.5, double beta = 0.5);

  const Grid& grid() const noexcept { return grid_; }
  int x_stride() const noexcept { return x_stride_; }
  int xi_stride() const noexcept { return xi_stride_; }
  double alpha() const noexcept { return x_stride_ * grid_.spacing(); }
  double beta() const noexcept { return xi_stride_ * grid_.frequency_spacing(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  PhasePoint point(std::size_t i) const noexcept;
  // Index of the node (ix, ixi), or -1.
  long find(int ix, int ixi) const noexcept;

 private:
  Grid grid_;
  int x_stride_;
  int xi_stride_;
  int x_half_;
  int xi_half_;
  std::vector<Node> nodes_;
  std::vector<long> lookup_;
};

/// Values on lattice points (vector) or on lattice pairs (matrix, rows w, columns z).
struct PhaseSpaceField {
  PhaseLattice lattice;
  CMatrix values;
  bool is_matrix() const noexcept { return values.cols() > 1; }
};

struct ModulationNormSpec {
  double p = 2.0;  // may be +infinity
  double q = 2.0;  // may be +infinity
  double s = 0.0;
};

struct ShiftOutcome {
  GridFunction value;
  PhasePoint applied;  // x rounded to the nearest sample
};

/// M_xi T_x f: e^{i xi y} f(y - x), periodic, x rounded to a sample.
GridFunction phase_shift(const GridFunction& f, PhasePoint z);
ShiftOutcome phase_shift_recorded(const GridFunction& f, PhasePoint z);

GridFunction translate(const GridFunction& f, double x);
GridFunction modulate(const GridFunction& f, double xi);

/// L^2-normalized Gaussian pi^{-1/4} e^{-y^2/2}.
GridFunction gaussian_window(const Grid& grid);

/// V_g f(z) = <f, pi(z) g> at every lattice point.
PhaseSpaceField stft(const GridFunction& f, const GridFunction& g, const PhaseLattice& lattice);

/// Frequency-uniform decomposition norm with a piecewise-cubic partition of unity.
double modulation_norm_boxes(const GridFunction& f, const ModulationNormSpec& spec);

/// Mixed L^p_x / L^q_xi norm of <xi>^s V_g f over the covering lattice.
double modulation_norm_stft(const GridFunction& f, const GridFunction& g, const ModulationNormSpec& spec);
double modulation_norm_stft(const GridFunction& f, const GridFunction& g, const ModulationNormSpec& spec,
                            const PhaseLattice& lattice);

/// Partition bump: 1 - S(|t|) on |t| <= 1 with S(t) = 3t^2 - 2t^3; sum_k sigma(t - k) = 1.
double partition_bump(double t);

}  // namespace gaborheat
