#include "gaborheat/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gaborheat/error.hpp"
#include "gaborheat/expr.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

Symbol::Symbol(std::string name, Evaluator f, bool time_independent, bool real_valued)
    : name_(std::move(name)), f_(std::move(f)), time_independent_(time_independent), real_valued_(real_valued) {
  require(bool(f_), "symbol evaluator is empty");
}

Symbol constant_symbol(cplx c) {
  return Symbol("const", [c](double, double, double) { return c; }, true, c.imag() == 0.0);
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  return Symbol("(" + a.name() + ")+(" + b.name() + ")",
                [a, b](double t, double x, double xi) { return a(t, x, xi) + b(t, x, xi); },
                a.time_independent() && b.time_independent(), a.real_valued() && b.real_valued());
}

Symbol operator*(cplx s, const Symbol& a) {
  return Symbol("scaled(" + a.name() + ")", [s, a](double t, double x, double xi) { return s * a(t, x, xi); },
                a.time_independent(), a.real_valued() && s.imag() == 0.0);
}

Symbol shift_symbol(const Symbol& sym, PhasePoint z) {
  Symbol out = sym;
  out.offset_ = sym.offset_ + z;
  return out;
}

namespace {

Symbol builtin(const std::string& name, Symbol::Evaluator f, SymbolClass c) {
  Symbol s(name, std::move(f));
  s.declare(c);
  return s;
}

}  // namespace

std::vector<std::string> builtin_symbol_names() {
  return {"heat", "drift", "degenerate_diffusion", "potential_well", "schrodinger_b", "chirp_b", "zero", "one"};
}

Symbol named_symbol(const std::string& name) {
  using K = SymbolClass::Kind;
  if (name == "heat" || name == "schrodinger_b")
    return builtin(name, [](double, double, double xi) { return cplx(xi * xi); }, {K::s00, 2, 0.0});
  if (name == "drift") return builtin(name, [](double, double, double xi) { return cplx(xi); }, {K::s00, 1, 0.0});
  if (name == "degenerate_diffusion")
    return builtin(
        name, [](double, double x, double xi) { return cplx(0.5 * (1.0 + std::tanh(x)) * xi * xi); },
        {K::s00, 2, 0.0});
  if (name == "potential_well")
    return builtin(
        name,
        [](double, double x, double) {
          const double s = std::sin(x);
          return cplx(s * s);
        },
        {K::analytic, 2, 0.0});
  if (name == "chirp_b") return builtin(name, [](double, double x, double) { return cplx(x * x); }, {K::gamma, 0, 2.0});
  if (name == "zero") return builtin(name, [](double, double, double) { return cplx(0.0); }, {K::s00, 0, 0.0});
  if (name == "one") return builtin(name, [](double, double, double) { return cplx(1.0); }, {K::s00, 0, 0.0});
  fail(ErrorKind::config, "unknown symbol '" + name + "'");
}

Symbol parse_symbol(const std::string& text) {
  for (const auto& n : builtin_symbol_names())
    if (n == text) return named_symbol(text);
  Expression e = Expression::parse(text);
  // Realness is checked empirically by the hypothesis scan.
  return Symbol(text, [e](double t, double x, double xi) { return e(t, x, xi); }, !e.uses_time(), true);
}

PhaseSampleSet PhaseSampleSet::from_grid(const Grid& grid, int stride) {
  require(stride >= 1, "stride must be positive");
  PhaseSampleSet s;
  s.x0 = grid.x(0);
  s.dx = grid.spacing() * stride;
  s.xi0 = grid.xi(0);
  s.dxi = grid.frequency_spacing() * stride;
  s.nx = (grid.samples() + stride - 1) / stride;
  s.nxi = s.nx;
  return s;
}

PhaseSampleSet PhaseSampleSet::box(double x_extent, double xi_extent, double dx, double dxi) {
  require(dx > 0.0 && dxi > 0.0, "sample spacings must be positive");
  PhaseSampleSet s;
  const int hx = int(std::floor(x_extent / dx + 1e-9));
  const int hxi = int(std::floor(xi_extent / dxi + 1e-9));
  s.x0 = -hx * dx;
  s.dx = dx;
  s.xi0 = -hxi * dxi;
  s.dxi = dxi;
  s.nx = 2 * hx + 1;
  s.nxi = 2 * hxi + 1;
  return s;
}

std::vector<double> central_difference_stencil(int order) {
  require(order >= 0 && order <= 8, "difference order must lie in [0, 8]");
  std::vector<double> st{1.0};
  auto convolve = [&st](const std::vector<double>& k) {
    std::vector<double> out(st.size() + k.size() - 1, 0.0);
    for (std::size_t i = 0; i < st.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) out[i + j] += st[i] * k[j];
    st = std::move(out);
  };
  for (int r = 0; r < order / 2; ++r) convolve({1.0, -2.0, 1.0});
  if (order % 2) convolve({-0.5, 0.0, 0.5});
  return st;
}

namespace {

int stencil_radius(int order) { return (order + 1) / 2; }

struct Table {
  int nx, nxi;
  std::vector<cplx> v;
  cplx& at(int i, int k) { return v[std::size_t(i) * nxi + k]; }
  cplx at(int i, int k) const { return v[std::size_t(i) * nxi + k]; }
};

Table tabulate(const Symbol& sym, const PhaseSampleSet& s, double t) {
  Table tab{s.nx, s.nxi, std::vector<cplx>(std::size_t(s.nx) * s.nxi)};
  parallel_for(std::size_t(s.nx), [&](std::size_t i) {
    for (int k = 0; k < s.nxi; ++k) tab.at(int(i), k) = sym(t, s.x(int(i)), s.xi(k));
  });
  return tab;
}

// Calls visit(a, b, i, k, value) for every derivative d_xi^a d_x^b with
// a + b <= max_order at every sample whose stencil stays inside the set.
template <class Visit>
void for_each_derivative(const Table& tab, const PhaseSampleSet& s, int max_order, Visit&& visit) {
  for (int b = 0; b <= max_order; ++b) {
    const auto sx = central_difference_stencil(b);
    const int rx = stencil_radius(b);
    const double scale_x = std::pow(s.dx, -b);
    const int off_x = int(sx.size() / 2);
    Table dx{tab.nx, tab.nxi, std::vector<cplx>(tab.v.size())};
    for (int i = rx; i < tab.nx - rx; ++i)
      for (int k = 0; k < tab.nxi; ++k) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < sx.size(); ++q) acc += sx[q] * tab.at(i + int(q) - off_x, k);
        dx.at(i, k) = scale_x * acc;
      }
    for (int a = 0; a + b <= max_order; ++a) {
      const auto sxi = central_difference_stencil(a);
      const int rxi = stencil_radius(a);
      const double scale_xi = std::pow(s.dxi, -a);
      const int off_xi = int(sxi.size() / 2);
      for (int i = rx; i < tab.nx - rx; ++i)
        for (int k = rxi; k < tab.nxi - rxi; ++k) {
          cplx acc = 0.0;
          for (std::size_t q = 0; q < sxi.size(); ++q) acc += sxi[q] * dx.at(i, k + int(q) - off_xi);
          visit(a, b, i, k, scale_xi * acc);
        }
    }
  }
}

std::vector<std::vector<double>> triangle(int max_order) {
  std::vector<std::vector<double>> t(std::size_t(max_order) + 1);
  for (int a = 0; a <= max_order; ++a) t[std::size_t(a)].assign(std::size_t(max_order - a) + 1, 0.0);
  return t;
}

}  // namespace

double SymbolClassReport::max_of_order(int k) const {
  double m = 0.0;
  for (int a = 0; a <= k && a <= max_order; ++a) m = std::max(m, entry(a, k - a));
  return m;
}

SymbolClassReport seminorm_estimate(const Symbol& sym, const PhaseSampleSet& samples,
                                    const std::vector<double>& t_samples, int max_order) {
  require(max_order >= 0 && max_order <= 6, "seminorm order must lie in [0, 6]");
  require(!t_samples.empty(), "at least one time sample is required");
  require(samples.nx > 2 * stencil_radius(max_order) && samples.nxi > 2 * stencil_radius(max_order),
          "sample set too small for the requested order");
  SymbolClassReport rep;
  rep.max_order = max_order;
  rep.sup = triangle(max_order);
  rep.lower_bound = std::numeric_limits<double>::infinity();

  std::optional<Table> previous;
  for (double t : t_samples) {
    Table tab = tabulate(sym, samples, t);
    for (const cplx& v : tab.v) {
      rep.lower_bound = std::min(rep.lower_bound, v.real());
      rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
    }
    if (previous)
      for (std::size_t q = 0; q < tab.v.size(); ++q)
        rep.continuity_jump = std::max(rep.continuity_jump, std::abs(tab.v[q] - previous->v[q]));
    for_each_derivative(tab, samples, max_order, [&](int a, int b, int, int, cplx d) {
      double& slot = rep.sup[std::size_t(a)][std::size_t(b)];
      slot = std::max(slot, std::abs(d));
    });
    if (sym.time_independent() && t_samples.size() > 1) break;
    previous = std::move(tab);
  }
  return rep;
}

AnalyticBoundReport analytic_bound_check(const Symbol& sym, const PhaseSampleSet& samples,
                                         const std::vector<double>& t_samples, double C,
                                         const std::vector<double>& c_alpha, int max_order, int min_total) {
  require(C > 0.0, "analytic constant C must be positive");
  require(!c_alpha.empty(), "C_alpha table must be nonempty");
  const SymbolClassReport rep = seminorm_estimate(sym, samples, t_samples, max_order);
  AnalyticBoundReport out;
  double factorial = 1.0;
  for (int b = 0; b <= max_order; ++b) {
    if (b > 0) factorial *= b;
    for (int a = 0; a + b <= max_order; ++a) {
      if (a + b < min_total) continue;
      const double ca = c_alpha[std::min<std::size_t>(std::size_t(a), c_alpha.size() - 1)];
      const double ratio = rep.entry(a, b) / (ca * std::pow(C, b + 1) * factorial);
      if (ratio > out.worst_ratio) out = {ratio, a, b};
    }
  }
  return out;
}

double GammaReport::max_entry() const {
  double m = 0.0;
  for (const auto& row : sup)
    for (double v : row) m = std::max(m, v);
  return m;
}

bool GammaReport::finite() const {
  for (const auto& row : sup)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

GammaReport gamma_seminorm(const Symbol& sym, const PhaseSampleSet& samples, double m, int max_order, double t) {
  require(max_order >= 0 && max_order <= 4, "Gamma^m seminorm order must lie in [0, 4]");
  GammaReport rep;
  rep.m = m;
  rep.max_order = max_order;
  rep.sup = triangle(max_order);
  const Table tab = tabulate(sym, samples, t);
  for_each_derivative(tab, samples, max_order, [&](int a, int b, int i, int k, cplx d) {
    const double w = std::pow(1.0 + std::abs(samples.x(i)) + std::abs(samples.xi(k)), a + b - m);
    double& slot = rep.sup[std::size_t(a)][std::size_t(b)];
    slot = std::max(slot, std::abs(d) * w);
  });
  return rep;
}

}  // namespace gaborheat
