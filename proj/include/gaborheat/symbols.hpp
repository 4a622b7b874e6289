#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaborheat/grid.hpp"
#include "gaborheat/tfa.hpp"

namespace gaborheat {

struct SymbolClass {
  enum class Kind { s00, gamma, analytic };
  Kind kind = Kind::s00;
  int k = 0;       // S^{(k)}_{0,0}
  double m = 0.0;  // Gamma^m
};

/// Time-dependent phase-space symbol a(t, x, xi), d = 1.
class Symbol {
 public:
  using Evaluator = std::function<cplx(double t, double x, double xi)>;

  Symbol(std::string name, Evaluator f, bool time_independent = true, bool real_valued = true);

  cplx operator()(double t, double x, double xi) const { return f_(t, x + offset_.x, xi + offset_.xi); }
  // Unshifted evaluator; operator() adds offset() to (x, xi).
  cplx base(double t, double x, double xi) const { return f_(t, x, xi); }
  PhasePoint offset() const noexcept { return offset_; }

  const std::string& name() const noexcept { return name_; }
  bool time_independent() const noexcept { return time_independent_; }
  bool real_valued() const noexcept { return real_valued_; }
  const std::optional<SymbolClass>& declared_class() const noexcept { return declared_; }
  Symbol& declare(SymbolClass c) {
    declared_ = c;
    return *this;
  }

 private:
  std::string name_;
  Evaluator f_;
  bool time_independent_;
  bool real_valued_;
  std::optional<SymbolClass> declared_;
  PhasePoint offset_;

  friend Symbol shift_symbol(const Symbol& sym, PhasePoint z);
};

Symbol constant_symbol(cplx c);
Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator*(cplx s, const Symbol& a);

/// a_z(t, x, xi) = a(t, x + x0, xi + xi0).
Symbol shift_symbol(const Symbol& sym, PhasePoint z);

/**
 * Built-in symbols: heat, drift, degenerate_diffusion, potential_well,
 * schrodinger_b, chirp_b, zero, one.
 */
Symbol named_symbol(const std::string& name);
std::vector<std::string> builtin_symbol_names();
/// Built-in name, or otherwise an expression in t, x, xi.
Symbol parse_symbol(const std::string& text);

/// Rectangular phase-space sample set; finite differences use its spacings.
struct PhaseSampleSet {
  double x0 = 0.0, dx = 1.0;
  double xi0 = 0.0, dxi = 1.0;
  int nx = 0, nxi = 0;

  double x(int i) const noexcept { return x0 + i * dx; }
  double xi(int k) const noexcept { return xi0 + k * dxi; }

  /// Grid samples x_j and xi_k, every stride-th one.
  static PhaseSampleSet from_grid(const Grid& grid, int stride = 1);
  /// Symmetric set [-x_extent, x_extent] x [-xi_extent, xi_extent].
  static PhaseSampleSet box(double x_extent, double xi_extent, double dx, double dxi);
};

/// sup[a][b] = sup |d_xi^a d_x^b sym| over interior samples and times.
struct SymbolClassReport {
  int max_order = 0;
  std::vector<std::vector<double>> sup;
  double lower_bound = 0.0;         // min Re sym
  double max_imag = 0.0;            // max |Im sym|
  double continuity_jump = 0.0;     // max |sym(t_{i+1}) - sym(t_i)| over samples
  double entry(int a, int b) const { return sup.at(std::size_t(a)).at(std::size_t(b)); }
  /// max over |alpha| + |beta| = k.
  double max_of_order(int k) const;
};

SymbolClassReport seminorm_estimate(const Symbol& sym, const PhaseSampleSet& samples,
                                    const std::vector<double>& t_samples, int max_order);

struct AnalyticBoundReport {
  double worst_ratio = 0.0;
  int alpha = 0;  // xi-order at the worst ratio
  int beta = 0;   // x-order at the worst ratio
  bool holds() const noexcept { return worst_ratio <= 1.0; }
};

/**
 * max |d_xi^a d_x^b sym| / (C_a C^{b+1} b!) over a + b in [min_total, max_order].
 * c_alpha[a] supplies C_a; missing entries repeat the last one.
 */
AnalyticBoundReport analytic_bound_check(const Symbol& sym, const PhaseSampleSet& samples,
                                         const std::vector<double>& t_samples, double C,
                                         const std::vector<double>& c_alpha, int max_order, int min_total = 0);

/// sup |d_xi^a d_x^b sym| (1 + |x| + |xi|)^{a + b - m}.
struct GammaReport {
  double m = 0.0;
  int max_order = 0;
  std::vector<std::vector<double>> sup;
  double entry(int a, int b) const { return sup.at(std::size_t(a)).at(std::size_t(b)); }
  double max_entry() const;
  bool finite() const;
};

GammaReport gamma_seminorm(const Symbol& sym, const PhaseSampleSet& samples, double m, int max_order,
                           double t = 0.0);

/// Stencil of the second-order central difference for d^order / dh^order.
std::vector<double> central_difference_stencil(int order);

}  // namespace gaborheat
