#include "gaborheat/gaborheat.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaborheat/battery.hpp"
#include "gaborheat/error.hpp"
#include "gaborheat/expr.hpp"
#include "gaborheat/grid.hpp"
#include "gaborheat/io.hpp"
#include "gaborheat/parallel.hpp"
#include "gaborheat/propagator.hpp"
#include "gaborheat/semilinear.hpp"
#include "gaborheat/symbols.hpp"
#include "gaborheat/tfa.hpp"
#include "gaborheat/wavefront.hpp"
#include "gaborheat/weyl.hpp"

using namespace gaborheat;

struct gh_grid {
  Grid v;
};
struct gh_function {
  GridFunction v;
};
struct gh_symbol {
  Symbol v;
};
struct gh_operator {
  OperatorMatrix v;
};
struct gh_field {
  PhaseSpaceField v;
};
struct gh_problem {
  EvolutionProblem v;
};
struct gh_nonlinearity {
  Nonlinearity v;
};
struct gh_trajectory {
  Trajectory v;
};
struct gh_result {
  std::vector<std::pair<std::string, double>> scalars;
  Table table;
};

namespace {

thread_local std::string t_last_error;

gh_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument:
      return GH_ERR_INVALID_ARGUMENT;
    case ErrorKind::config:
      return GH_ERR_CONFIG;
    case ErrorKind::nonconvergence:
      return GH_ERR_NONCONVERGENCE;
    case ErrorKind::hypothesis:
      return GH_ERR_HYPOTHESIS;
    case ErrorKind::numerical:
      return GH_ERR_NUMERICAL;
    case ErrorKind::io:
      return GH_ERR_IO;
  }
  return GH_ERR_INTERNAL;
}

template <class F>
gh_status guard(F&& body) {
  try {
    body();
    t_last_error.clear();
    return GH_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return GH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GH_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return GH_ERR_INTERNAL;
  }
}

template <class T>
const T& deref(const T* p, const char* what) {
  if (!p) fail(ErrorKind::invalid_argument, std::string("null ") + what + " handle");
  return *p;
}

template <class T>
void need_out(T** out) {
  if (!out) fail(ErrorKind::invalid_argument, "null output pointer");
}

void add_scalar(gh_result& r, std::string name, double v) { r.scalars.emplace_back(std::move(name), v); }

gh_warning_callback g_cb = nullptr;
void* g_cb_user = nullptr;

PhaseSampleSet central_samples(const Grid& grid, int stride) {
  require(stride >= 1, "stride must be positive");
  const double dx = grid.spacing() * stride;
  const double dxi = grid.frequency_spacing() * stride;
  return PhaseSampleSet::box(0.25 * grid.length(), 0.5 * grid.nyquist(), dx, dxi);
}

}  // namespace

extern "C" {

const char* gh_version(void) { return "0.3.0"; }

const char* gh_last_error(void) { return t_last_error.c_str(); }

void gh_set_threads(unsigned n) { set_max_threads(n); }

void gh_set_warning_callback(gh_warning_callback cb, void* user) {
  g_cb = cb;
  g_cb_user = user;
  if (!cb) {
    set_warning_sink(nullptr);
    return;
  }
  set_warning_sink([](const std::string& m) {
    if (g_cb) g_cb(m.c_str(), g_cb_user);
  });
}

gh_status gh_grid_create(int d, double L, int n, gh_grid** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_grid{Grid(d, L, n)};
  });
}

void gh_grid_destroy(gh_grid* g) { delete g; }

gh_status gh_grid_info(const gh_grid* g, int* d, double* L, int* n) {
  return guard([&] {
    const Grid& gr = deref(g, "grid").v;
    if (d) *d = gr.dim();
    if (L) *L = gr.length();
    if (n) *n = gr.samples();
  });
}

gh_status gh_function_from_expression(const gh_grid* g, const char* expr, gh_function** out) {
  return guard([&] {
    need_out(out);
    const Grid& gr = deref(g, "grid").v;
    if (!expr) fail(ErrorKind::invalid_argument, "null expression");
    require(gr.dim() == 1, "expression sampling is implemented for d = 1");
    const Expression e = Expression::parse(expr);
    if (e.uses_xi() || e.uses_time()) fail(ErrorKind::config, "function expressions depend on x only");
    GridFunction f = sample(gr, [&](double x) { return e(0.0, x, 0.0); });
    if (!f.values().allFinite()) fail(ErrorKind::config, std::string("expression '") + expr + "' is not finite on the grid");
    *out = new gh_function{std::move(f)};
  });
}

gh_status gh_function_from_values(const gh_grid* g, const double* re, const double* im, size_t count,
                                  gh_function** out) {
  return guard([&] {
    need_out(out);
    const Grid& gr = deref(g, "grid").v;
    require(re != nullptr, "null value array");
    require(count == gr.size(), "value count does not match the grid");
    CVector v(static_cast<Eigen::Index>(count));
    for (size_t i = 0; i < count; ++i) v[Eigen::Index(i)] = cplx(re[i], im ? im[i] : 0.0);
    *out = new gh_function{GridFunction(gr, std::move(v))};
  });
}

gh_status gh_function_delta(const gh_grid* g, double x0, gh_function** out) {
  return guard([&] {
    need_out(out);
    const Grid& gr = deref(g, "grid").v;
    require(gr.dim() == 1, "delta is implemented for d = 1");
    GridFunction f(gr);
    const long j = std::lround((x0 + 0.5 * gr.length()) / gr.spacing());
    require(j >= 0 && j < gr.samples(), "delta position outside the box");
    f[std::size_t(j)] = 1.0 / gr.spacing();
    *out = new gh_function{std::move(f)};
  });
}

gh_status gh_function_window(const gh_grid* g, gh_function** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_function{gaussian_window(deref(g, "grid").v)};
  });
}

gh_status gh_function_random(const gh_grid* g, unsigned long long seed, gh_function** out) {
  return guard([&] {
    need_out(out);
    UniformStream rng(seed);
    *out = new gh_function{random_band_limited(deref(g, "grid").v, rng)};
  });
}

gh_status gh_function_read_csv(const char* path, gh_function** out) {
  return guard([&] {
    need_out(out);
    require(path != nullptr, "null path");
    *out = new gh_function{read_grid_function_csv(path)};
  });
}

gh_status gh_function_write_csv(const gh_function* f, const char* path) {
  return guard([&] {
    require(path != nullptr, "null path");
    write_grid_function_csv(path, deref(f, "function").v);
  });
}

gh_status gh_function_size(const gh_function* f, size_t* count) {
  return guard([&] {
    require(count != nullptr, "null output pointer");
    *count = size_t(deref(f, "function").v.values().size());
  });
}

gh_status gh_function_values(const gh_function* f, double* re, double* im, size_t count) {
  return guard([&] {
    const CVector& v = deref(f, "function").v.values();
    require(count == size_t(v.size()), "buffer size does not match the function");
    for (size_t i = 0; i < count; ++i) {
      if (re) re[i] = v[Eigen::Index(i)].real();
      if (im) im[i] = v[Eigen::Index(i)].imag();
    }
  });
}

gh_status gh_function_scale(const gh_function* f, double re, double im, gh_function** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_function{cplx(re, im) * deref(f, "function").v};
  });
}

void gh_function_destroy(gh_function* f) { delete f; }

gh_status gh_symbol_parse(const char* text, gh_symbol** out) {
  return guard([&] {
    need_out(out);
    if (!text) fail(ErrorKind::invalid_argument, "null symbol text");
    *out = new gh_symbol{parse_symbol(text)};
  });
}

gh_status gh_symbol_eval(const gh_symbol* s, double t, double x, double xi, double* re, double* im) {
  return guard([&] {
    const cplx v = deref(s, "symbol").v(t, x, xi);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

gh_status gh_symbol_shift(const gh_symbol* s, double x0, double xi0, gh_symbol** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_symbol{shift_symbol(deref(s, "symbol").v, {x0, xi0})};
  });
}

gh_status gh_symbol_seminorms(const gh_symbol* s, const gh_grid* g, const double* times, size_t count, int max_order,
                              gh_result** out) {
  return guard([&] {
    need_out(out);
    require(times != nullptr && count > 0, "time samples are required");
    const auto rep = seminorm_estimate(deref(s, "symbol").v, central_samples(deref(g, "grid").v, 1),
                                       std::vector<double>(times, times + count), max_order);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"alpha", "beta", "sup"};
    for (int a = 0; a <= max_order; ++a)
      for (int b = 0; a + b <= max_order; ++b) r->table.add_row({double(a), double(b), rep.entry(a, b)});
    add_scalar(*r, "lower_bound", rep.lower_bound);
    add_scalar(*r, "max_imag", rep.max_imag);
    add_scalar(*r, "continuity_jump", rep.continuity_jump);
    *out = r.release();
  });
}

gh_status gh_symbol_tabulate(const gh_symbol* s, const gh_grid* g, double t, int stride, gh_result** out) {
  return guard([&] {
    need_out(out);
    const Symbol& sym = deref(s, "symbol").v;
    const Grid& gr = deref(g, "grid").v;
    require(stride >= 1, "stride must be positive");
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"x", "xi", "re", "im"};
    for (int j = 0; j < gr.samples(); j += stride)
      for (int k = 0; k < gr.samples(); k += stride) {
        const cplx v = sym(t, gr.x(j), gr.xi(k));
        r->table.add_row({gr.x(j), gr.xi(k), v.real(), v.imag()});
      }
    *out = r.release();
  });
}

void gh_symbol_destroy(gh_symbol* s) { delete s; }

gh_status gh_operator_quantize(const gh_symbol* s, double t, const gh_grid* g, gh_operator** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_operator{weyl_quantize(deref(s, "symbol").v, t, deref(g, "grid").v)};
  });
}

gh_status gh_operator_size(const gh_operator* op, size_t* n) {
  return guard([&] {
    require(n != nullptr, "null output pointer");
    *n = size_t(deref(op, "operator").v.entries.rows());
  });
}

gh_status gh_operator_entries(const gh_operator* op, double* re, double* im, size_t count) {
  return guard([&] {
    const CMatrix& m = deref(op, "operator").v.entries;
    require(count == size_t(m.size()), "buffer size does not match the operator");
    size_t i = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c, ++i) {
        if (re) re[i] = m(r, c).real();
        if (im) im[i] = m(r, c).imag();
      }
  });
}

gh_status gh_operator_hermitian_deviation(const gh_operator* op, double* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = deref(op, "operator").v.hermitian_deviation;
  });
}

gh_status gh_operator_apply(const gh_operator* op, const gh_function* f, gh_function** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_function{deref(op, "operator").v.apply(deref(f, "function").v)};
  });
}

gh_status gh_operator_extract_symbol(const gh_operator* op, gh_symbol** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_symbol{extract_symbol(deref(op, "operator").v)};
  });
}

gh_status gh_operator_write_wopm(const gh_operator* op, const char* path) {
  return guard([&] {
    require(path != nullptr, "null path");
    write_operator_wopm(path, deref(op, "operator").v);
  });
}

gh_status gh_operator_read_wopm(const char* path, gh_operator** out) {
  return guard([&] {
    need_out(out);
    require(path != nullptr, "null path");
    *out = new gh_operator{read_operator_wopm(path)};
  });
}

void gh_operator_destroy(gh_operator* op) { delete op; }

gh_status gh_problem_create(const gh_symbol* a, const gh_symbol* b, double T, double dt, const gh_grid* g,
                            gh_problem** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_problem{EvolutionProblem(deref(a, "symbol").v, deref(b, "symbol").v, T, dt, deref(g, "grid").v)};
  });
}

gh_status gh_problem_set_slack(gh_problem* p, double slack) {
  return guard([&] {
    require(p != nullptr, "null problem handle");
    require(slack >= 0.0, "slack must be nonnegative");
    p->v.garding_slack = slack;
  });
}

gh_status gh_problem_check(const gh_problem* p, gh_result** out) {
  return guard([&] {
    need_out(out);
    const HypothesisReport rep = check_hypotheses(deref(p, "problem").v);
    auto r = std::make_unique<gh_result>();
    add_scalar(*r, "a_lower_bound", rep.a_lower_bound);
    add_scalar(*r, "a_second_order", rep.a_second_order);
    add_scalar(*r, "b_first_order", rep.b_first_order);
    add_scalar(*r, "max_imag", rep.max_imag);
    add_scalar(*r, "continuity_jump", rep.continuity_jump);
    add_scalar(*r, "warnings", double(rep.warnings.size()));
    if (!rep.real_valued()) fail(ErrorKind::hypothesis, "symbols a, b must be real-valued");
    *out = r.release();
  });
}

void gh_problem_destroy(gh_problem* p) { delete p; }

gh_status gh_nonlinearity_create(const char* g_expr, const int* j, const int* k, const double* re, const double* im,
                                 size_t count, gh_nonlinearity** out) {
  return guard([&] {
    need_out(out);
    require(count == 0 || (j && k && re), "null coefficient arrays");
    std::vector<Monomial> terms;
    for (size_t i = 0; i < count; ++i) terms.push_back({j[i], k[i], cplx(re[i], im ? im[i] : 0.0)});
    const Expression e = Expression::parse(g_expr ? g_expr : "1");
    if (e.uses_xi()) fail(ErrorKind::config, "the factor g may not depend on xi");
    *out = new gh_nonlinearity{
        Nonlinearity([e](double t, double x) { return e(t, x, 0.0); }, std::move(terms), !e.uses_time())};
  });
}

gh_status gh_nonlinearity_eval(const gh_nonlinearity* nl, double t, const gh_function* u, gh_function** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_function{eval_nonlinearity(deref(nl, "nonlinearity").v, t, deref(u, "function").v)};
  });
}

void gh_nonlinearity_destroy(gh_nonlinearity* nl) { delete nl; }

gh_status gh_trajectory_size(const gh_trajectory* tr, size_t* count) {
  return guard([&] {
    require(count != nullptr, "null output pointer");
    *count = deref(tr, "trajectory").v.times.size();
  });
}

gh_status gh_trajectory_time(const gh_trajectory* tr, size_t i, double* t) {
  return guard([&] {
    require(t != nullptr, "null output pointer");
    const auto& v = deref(tr, "trajectory").v;
    require(i < v.times.size(), "trajectory index out of range");
    *t = v.times[i];
  });
}

gh_status gh_trajectory_state(const gh_trajectory* tr, size_t i, gh_function** out) {
  return guard([&] {
    need_out(out);
    const auto& v = deref(tr, "trajectory").v;
    require(i < v.states.size(), "trajectory index out of range");
    *out = new gh_function{v.states[i]};
  });
}

gh_status gh_trajectory_write_csv(const gh_trajectory* tr, const char* path) {
  return guard([&] {
    require(path != nullptr, "null path");
    const auto& v = deref(tr, "trajectory").v;
    Table t;
    t.columns = {"t", "index", "x", "re", "im"};
    for (size_t i = 0; i < v.times.size(); ++i) {
      const Grid& g = v.states[i].grid();
      for (int j = 0; j < g.samples(); ++j)
        t.add_row({v.times[i], double(j), g.x(j), v.states[i][j].real(), v.states[i][j].imag()});
    }
    write_table_csv(path, t);
  });
}

void gh_trajectory_destroy(gh_trajectory* tr) { delete tr; }

gh_status gh_field_stft(const gh_function* f, const gh_function* g, double alpha, double beta, gh_field** out) {
  return guard([&] {
    need_out(out);
    const GridFunction& ff = deref(f, "function").v;
    *out = new gh_field{stft(ff, deref(g, "window").v, PhaseLattice::covering(ff.grid(), alpha, beta))};
  });
}

gh_status gh_field_gabor_matrix(const gh_problem* p, double t, const gh_function* g, gh_field** out) {
  return guard([&] {
    need_out(out);
    const EvolutionProblem& prob = deref(p, "problem").v;
    *out = new gh_field{gabor_matrix(prob, t, deref(g, "window").v, PhaseLattice::interior(prob.grid))};
  });
}

gh_status gh_field_gabor_of_operator(const gh_operator* op, const gh_function* g, gh_field** out) {
  return guard([&] {
    need_out(out);
    const OperatorMatrix& S = deref(op, "operator").v;
    *out = new gh_field{gabor_matrix(S, deref(g, "window").v, PhaseLattice::interior(S.grid))};
  });
}

gh_status gh_field_size(const gh_field* f, size_t* rows, size_t* cols) {
  return guard([&] {
    const auto& v = deref(f, "field").v.values;
    if (rows) *rows = size_t(v.rows());
    if (cols) *cols = size_t(v.cols());
  });
}

gh_status gh_field_write_csv(const gh_field* f, const char* path) {
  return guard([&] {
    require(path != nullptr, "null path");
    write_field_csv(path, deref(f, "field").v);
  });
}

gh_status gh_field_decay_fit(const gh_field* f, double bin_width, double angle, double aperture, gh_result** out) {
  return guard([&] {
    need_out(out);
    const auto& field = deref(f, "field").v;
    const DecayReport rep =
        aperture < 0.0 ? decay_fit(field, bin_width) : decay_fit_directional(field, angle, aperture, bin_width);
    auto r = std::make_unique<gh_result>();
    add_scalar(*r, "fitted_N", rep.fitted_N);
    add_scalar(*r, "residual", rep.residual);
    add_scalar(*r, "used_bins", rep.used_bins);
    r->table.columns = {"bin_lo", "bin_hi", "max_abs"};
    for (size_t b = 0; b < rep.max_abs.size(); ++b) r->table.add_row({rep.bins[b], rep.bins[b + 1], rep.max_abs[b]});
    *out = r.release();
  });
}

void gh_field_destroy(gh_field* f) { delete f; }

gh_status gh_result_scalar(const gh_result* r, const char* name, double* value) {
  return guard([&] {
    require(name != nullptr && value != nullptr, "null argument");
    for (const auto& [k, v] : deref(r, "result").scalars)
      if (k == name) {
        *value = v;
        return;
      }
    fail(ErrorKind::invalid_argument, std::string("result has no scalar '") + name + "'");
  });
}

size_t gh_result_scalar_count(const gh_result* r) { return r ? r->scalars.size() : 0; }

const char* gh_result_scalar_name(const gh_result* r, size_t i) {
  return r && i < r->scalars.size() ? r->scalars[i].first.c_str() : nullptr;
}

double gh_result_scalar_value(const gh_result* r, size_t i) {
  return r && i < r->scalars.size() ? r->scalars[i].second : std::numeric_limits<double>::quiet_NaN();
}

size_t gh_result_rows(const gh_result* r) { return r ? r->table.rows.size() : 0; }

size_t gh_result_cols(const gh_result* r) { return r ? r->table.columns.size() : 0; }

const char* gh_result_column(const gh_result* r, size_t c) {
  return r && c < r->table.columns.size() ? r->table.columns[c].c_str() : nullptr;
}

double gh_result_value(const gh_result* r, size_t row, size_t col) {
  if (!r || row >= r->table.rows.size() || col >= r->table.columns.size())
    return std::numeric_limits<double>::quiet_NaN();
  return r->table.rows[row][col];
}

gh_status gh_result_write_csv(const gh_result* r, const char* path) {
  return guard([&] {
    require(path != nullptr, "null path");
    write_table_csv(path, deref(r, "result").table);
  });
}

void gh_result_destroy(gh_result* r) { delete r; }

gh_status gh_modulation_norm(const gh_function* f, double p, double q, double s, int method, double* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    const GridFunction& ff = deref(f, "function").v;
    const ModulationNormSpec spec{p, q, s};
    if (method == 0)
      *out = modulation_norm_boxes(ff, spec);
    else if (method == 1)
      *out = modulation_norm_stft(ff, gaussian_window(ff.grid()), spec);
    else
      fail(ErrorKind::invalid_argument, "unknown modulation norm method");
  });
}

gh_status gh_garding_constant(const gh_symbol* a, const gh_symbol* b, int k, double t, const gh_grid* g,
                              unsigned long long seed, double* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = garding_constant(deref(a, "symbol").v, deref(b, "symbol").v, k, t,
                            garding_battery(deref(g, "grid").v, seed));
  });
}

gh_status gh_solve_linear(const gh_problem* p, const gh_function* u0, double sigma, double t, gh_trajectory** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_trajectory{solve_linear(deref(p, "problem").v, deref(u0, "function").v, sigma, t)};
  });
}

gh_status gh_propagator_matrix(const gh_problem* p, double sigma, double t, gh_operator** out) {
  return guard([&] {
    need_out(out);
    *out = new gh_operator{propagator_matrix(deref(p, "problem").v, sigma, t)};
  });
}

gh_status gh_energy_uniformity(const gh_problem* p, int k, const gh_function* g, double radius, int stride,
                               gh_result** out) {
  return guard([&] {
    need_out(out);
    const EvolutionProblem& prob = deref(p, "problem").v;
    const auto zs = uniformity_z_set(prob.grid, radius, stride);
    const auto C = energy_uniformity(prob, k, deref(g, "window").v, zs);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"zx", "zxi", "C"};
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = 0; i < zs.size(); ++i) {
      r->table.add_row({zs[i].x, zs[i].xi, C[i]});
      lo = std::min(lo, C[i]);
      hi = std::max(hi, C[i]);
    }
    add_scalar(*r, "ratio", hi / lo);
    add_scalar(*r, "max", hi);
    add_scalar(*r, "min", lo);
    *out = r.release();
  });
}

gh_status gh_analytic_energy(const gh_function* u, double eps, int N, double* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    *out = analytic_energy(deref(u, "function").v, eps, N);
  });
}

gh_status gh_analytic_stability(const gh_problem* p, const gh_function* u0, double eps, const int* N, size_t count,
                                gh_result** out) {
  return guard([&] {
    need_out(out);
    require(N != nullptr && count > 0, "N list is empty");
    const std::vector<int> Ns(N, N + count);
    const auto ratios = analytic_stability(deref(p, "problem").v, deref(u0, "function").v, eps, Ns);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"N", "ratio"};
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = 0; i < Ns.size(); ++i) {
      r->table.add_row({double(Ns[i]), ratios[i]});
      lo = std::min(lo, ratios[i]);
      hi = std::max(hi, ratios[i]);
    }
    add_scalar(*r, "spread", hi / lo);
    *out = r.release();
  });
}

gh_status gh_picard_solve(const gh_problem* p, const gh_nonlinearity* nl, const gh_function* u0, double pn,
                          double s, double tol, int max_iter, int guess, gh_trajectory** traj,
                          gh_result** diagnostics) {
  return guard([&] {
    need_out(traj);
    const EvolutionProblem& prob = deref(p, "problem").v;
    const Nonlinearity& N = deref(nl, "nonlinearity").v;
    PicardOptions opts;
    opts.norm = {pn, 1.0, s};
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.guess = guess == 0 ? PicardGuess::zero : PicardGuess::linear;
    PicardResult res = picard_solve(prob, N, deref(u0, "function").v, opts);
    std::unique_ptr<gh_result> r;
    if (diagnostics) {
      r = std::make_unique<gh_result>();
      const auto& d = res.diagnostics;
      double max_ratio = 0.0;
      for (size_t i = 1; i < d.iterate_gaps.size(); ++i)
        if (d.iterate_gaps[i - 1] < 1.0 && d.iterate_gaps[i - 1] > 0.0)
          max_ratio = std::max(max_ratio, d.iterate_gaps[i] / d.iterate_gaps[i - 1]);
      add_scalar(*r, "converged", d.converged ? 1.0 : 0.0);
      add_scalar(*r, "T0_used", d.T0_used);
      add_scalar(*r, "restarts", d.restarts);
      add_scalar(*r, "iterations", double(d.iterate_gaps.size()));
      add_scalar(*r, "max_ratio", max_ratio);
      EvolutionProblem used = prob;
      used.T = d.T0_used;
      used.dt = std::min(prob.dt, d.T0_used);
      add_scalar(*r, "duhamel_residual", duhamel_residual(used, N, res.trajectory));
      r->table.columns = {"iteration", "gap"};
      for (size_t i = 0; i < d.iterate_gaps.size(); ++i) r->table.add_row({double(i + 1), d.iterate_gaps[i]});
    }
    *traj = new gh_trajectory{std::move(res.trajectory)};
    if (diagnostics) *diagnostics = r.release();
  });
}

gh_status gh_lipschitz_check(const gh_problem* p, const gh_nonlinearity* nl, const gh_function* u0,
                             const gh_function* v0, double pn, double s, double tol, int max_iter, double* out) {
  return guard([&] {
    require(out != nullptr, "null output pointer");
    PicardOptions opts;
    opts.norm = {pn, 1.0, s};
    opts.tol = tol;
    opts.max_iter = max_iter;
    *out = lipschitz_check(deref(p, "problem").v, deref(nl, "nonlinearity").v, deref(u0, "function").v,
                           deref(v0, "function").v, opts);
  });
}

gh_status gh_contro1(const gh_grid* g, const double* t, size_t count, gh_result** out) {
  return guard([&] {
    need_out(out);
    require(t != nullptr && count > 0, "time list is empty");
    const std::vector<double> ts(t, t + count);
    const auto sups = contro1_check(deref(g, "grid").v, ts);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"t", "sup"};
    for (size_t i = 0; i < ts.size(); ++i) r->table.add_row({ts[i], sups[i]});
    add_scalar(*r, "sup_max", *std::max_element(sups.begin(), sups.end()));
    *out = r.release();
  });
}

gh_status gh_contro2(double p, double q, const double* L, size_t count, gh_result** out) {
  return guard([&] {
    need_out(out);
    require(L != nullptr && count > 0, "box size list is empty");
    const std::vector<double> Ls(L, L + count);
    const auto ratios = contro2_check(p, q, Ls);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"L", "ratio"};
    for (size_t i = 0; i < Ls.size(); ++i) r->table.add_row({Ls[i], ratios[i]});
    add_scalar(*r, "growth", ratios.back() / ratios.front());
    *out = r.release();
  });
}

gh_status gh_wavefront(const gh_function* f, const gh_function* g, int angular_n, double threshold, gh_result** out) {
  return guard([&] {
    need_out(out);
    WavefrontOptions opts;
    opts.angular_n = angular_n;
    opts.threshold = threshold;
    const WavefrontEstimate est = estimate_wavefront(deref(f, "function").v, deref(g, "window").v, opts);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"angle", "exponent", "member"};
    for (size_t a = 0; a < est.angles.size(); ++a)
      r->table.add_row({est.angles[a], est.exponents[a], est.member[a] ? 1.0 : 0.0});
    add_scalar(*r, "members", double(est.count()));
    *out = r.release();
  });
}

gh_status gh_pseudolocality(const gh_problem* p, double t, const gh_function* f, const gh_function* g, int angular_n,
                            double threshold, gh_result** out) {
  return guard([&] {
    need_out(out);
    WavefrontOptions opts;
    opts.angular_n = angular_n;
    opts.threshold = threshold;
    const auto res = pseudolocality_check(deref(p, "problem").v, t, deref(f, "function").v, deref(g, "window").v, opts);
    auto r = std::make_unique<gh_result>();
    r->table.columns = {"angle", "before", "after"};
    for (size_t a = 0; a < res.before.angles.size(); ++a)
      r->table.add_row({res.before.angles[a], res.before.member[a] ? 1.0 : 0.0, res.after.member[a] ? 1.0 : 0.0});
    add_scalar(*r, "contained", res.contained ? 1.0 : 0.0);
    add_scalar(*r, "extra", double(res.extra.size()));
    *out = r.release();
  });
}

gh_status gh_noncharacteristic(const gh_symbol* s, double m, double x0, double xi0, double eps, double c,
                               gh_result** out) {
  return guard([&] {
    need_out(out);
    const auto res = noncharacteristic_test(deref(s, "symbol").v, m, {x0, xi0}, eps, c);
    auto r = std::make_unique<gh_result>();
    add_scalar(*r, "noncharacteristic", res.noncharacteristic ? 1.0 : 0.0);
    add_scalar(*r, "margin", res.margin);
    add_scalar(*r, "samples", double(res.samples));
    *out = r.release();
  });
}

}  // extern "C"
