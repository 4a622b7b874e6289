/* C interface to the gaborheat phase-space toolkit.
 *
 * All objects are opaque handles created by gh_*_create / producer calls and
 * released with the matching gh_*_destroy. Every fallible call returns a
 * gh_status; on failure gh_last_error() describes the problem (per thread).
 * Spatial dimension d = 1 unless a function says otherwise. Pass INFINITY
 * for p = inf or q = inf.
 */
#ifndef GABORHEAT_H
#define GABORHEAT_H

#include <stddef.h>

#if defined(GH_BUILDING_LIBRARY)
#define GH_API __attribute__((visibility("default")))
#else
#define GH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gh_status {
  GH_OK = 0,
  GH_ERR_INVALID_ARGUMENT = 1,
  GH_ERR_CONFIG = 2,
  GH_ERR_NONCONVERGENCE = 3,
  GH_ERR_HYPOTHESIS = 4,
  GH_ERR_NUMERICAL = 5,
  GH_ERR_IO = 6,
  GH_ERR_INTERNAL = 7
} gh_status;

typedef struct gh_grid gh_grid;
typedef struct gh_function gh_function;
typedef struct gh_symbol gh_symbol;
typedef struct gh_operator gh_operator;
typedef struct gh_field gh_field;
typedef struct gh_problem gh_problem;
typedef struct gh_nonlinearity gh_nonlinearity;
typedef struct gh_trajectory gh_trajectory;
typedef struct gh_result gh_result;

typedef void (*gh_warning_callback)(const char* message, void* user);

GH_API const char* gh_version(void);
GH_API const char* gh_last_error(void);
GH_API void gh_set_threads(unsigned n);
/* NULL restores the default sink (standard error). */
GH_API void gh_set_warning_callback(gh_warning_callback cb, void* user);

/* Grid: d in {1, 2}, n a power of two >= 8. */
GH_API gh_status gh_grid_create(int d, double L, int n, gh_grid** out);
GH_API void gh_grid_destroy(gh_grid* g);
GH_API gh_status gh_grid_info(const gh_grid* g, int* d, double* L, int* n);

/* Grid functions. Expressions use the variable x (and y for d = 2 is not
 * supported); values are n^d complex samples. */
GH_API gh_status gh_function_from_expression(const gh_grid* g, const char* expr, gh_function** out);
GH_API gh_status gh_function_from_values(const gh_grid* g, const double* re, const double* im, size_t count,
                                         gh_function** out);
GH_API gh_status gh_function_delta(const gh_grid* g, double x0, gh_function** out);
GH_API gh_status gh_function_window(const gh_grid* g, gh_function** out);
GH_API gh_status gh_function_random(const gh_grid* g, unsigned long long seed, gh_function** out);
GH_API gh_status gh_function_read_csv(const char* path, gh_function** out);
GH_API gh_status gh_function_write_csv(const gh_function* f, const char* path);
GH_API gh_status gh_function_size(const gh_function* f, size_t* count);
GH_API gh_status gh_function_values(const gh_function* f, double* re, double* im, size_t count);
GH_API gh_status gh_function_scale(const gh_function* f, double re, double im, gh_function** out);
GH_API void gh_function_destroy(gh_function* f);

/* Symbols: a built-in name (heat, drift, degenerate_diffusion,
 * potential_well, schrodinger_b, chirp_b, zero, one) or an expression in
 * t, x, xi. */
GH_API gh_status gh_symbol_parse(const char* text, gh_symbol** out);
GH_API gh_status gh_symbol_eval(const gh_symbol* s, double t, double x, double xi, double* re, double* im);
GH_API gh_status gh_symbol_shift(const gh_symbol* s, double x0, double xi0, gh_symbol** out);
/* Table alpha, beta, sup; scalars lower_bound, max_imag, continuity_jump.
 * Samples: every stride-th grid point restricted to |x| <= L/4, |xi| <= nyquist/2. */
GH_API gh_status gh_symbol_seminorms(const gh_symbol* s, const gh_grid* g, const double* times, size_t count,
                                     int max_order, gh_result** out);
/* Table x, xi, re, im on every stride-th grid sample. */
GH_API gh_status gh_symbol_tabulate(const gh_symbol* s, const gh_grid* g, double t, int stride, gh_result** out);
GH_API void gh_symbol_destroy(gh_symbol* s);

/* Dense operators. */
GH_API gh_status gh_operator_quantize(const gh_symbol* s, double t, const gh_grid* g, gh_operator** out);
GH_API gh_status gh_operator_size(const gh_operator* op, size_t* n);
GH_API gh_status gh_operator_entries(const gh_operator* op, double* re, double* im, size_t count);
GH_API gh_status gh_operator_hermitian_deviation(const gh_operator* op, double* out);
GH_API gh_status gh_operator_apply(const gh_operator* op, const gh_function* f, gh_function** out);
GH_API gh_status gh_operator_extract_symbol(const gh_operator* op, gh_symbol** out);
GH_API gh_status gh_operator_write_wopm(const gh_operator* op, const char* path);
GH_API gh_status gh_operator_read_wopm(const char* path, gh_operator** out);
GH_API void gh_operator_destroy(gh_operator* op);

/* Evolution problem d_t u + a^w u + i b^w u = 0 on [0, T]. */
GH_API gh_status gh_problem_create(const gh_symbol* a, const gh_symbol* b, double T, double dt, const gh_grid* g,
                                   gh_problem** out);
GH_API gh_status gh_problem_set_slack(gh_problem* p, double slack);
/* Scalars a_lower_bound, a_second_order, b_first_order, max_imag,
 * continuity_jump, warnings. Fails with GH_ERR_HYPOTHESIS for complex symbols. */
GH_API gh_status gh_problem_check(const gh_problem* p, gh_result** out);
GH_API void gh_problem_destroy(gh_problem* p);

/* N = g(t, x) sum_i c_i u^{j_i} conj(u)^{k_i}; g an expression in t, x. */
GH_API gh_status gh_nonlinearity_create(const char* g_expr, const int* j, const int* k, const double* re,
                                        const double* im, size_t count, gh_nonlinearity** out);
GH_API gh_status gh_nonlinearity_eval(const gh_nonlinearity* nl, double t, const gh_function* u, gh_function** out);
GH_API void gh_nonlinearity_destroy(gh_nonlinearity* nl);

/* Trajectories. */
GH_API gh_status gh_trajectory_size(const gh_trajectory* tr, size_t* count);
GH_API gh_status gh_trajectory_time(const gh_trajectory* tr, size_t i, double* t);
GH_API gh_status gh_trajectory_state(const gh_trajectory* tr, size_t i, gh_function** out);
/* Long format: t, index, x, re, im. */
GH_API gh_status gh_trajectory_write_csv(const gh_trajectory* tr, const char* path);
GH_API void gh_trajectory_destroy(gh_trajectory* tr);

/* Phase-space fields. */
GH_API gh_status gh_field_stft(const gh_function* f, const gh_function* g, double alpha, double beta, gh_field** out);
/* Gabor matrix of S(t, 0) on the lattice restricted to |z| <= L/4. */
GH_API gh_status gh_field_gabor_matrix(const gh_problem* p, double t, const gh_function* g, gh_field** out);
GH_API gh_status gh_field_gabor_of_operator(const gh_operator* op, const gh_function* g, gh_field** out);
GH_API gh_status gh_field_size(const gh_field* f, size_t* rows, size_t* cols);
GH_API gh_status gh_field_write_csv(const gh_field* f, const char* path);
/* Scalars fitted_N, residual, used_bins; table bin_lo, bin_hi, max_abs.
 * A negative aperture fits all directions. */
GH_API gh_status gh_field_decay_fit(const gh_field* f, double bin_width, double angle, double aperture,
                                    gh_result** out);
GH_API void gh_field_destroy(gh_field* f);

/* Generic results: named scalars and one numeric table. */
GH_API gh_status gh_result_scalar(const gh_result* r, const char* name, double* value);
GH_API size_t gh_result_scalar_count(const gh_result* r);
GH_API const char* gh_result_scalar_name(const gh_result* r, size_t i);
GH_API double gh_result_scalar_value(const gh_result* r, size_t i);
GH_API size_t gh_result_rows(const gh_result* r);
GH_API size_t gh_result_cols(const gh_result* r);
GH_API const char* gh_result_column(const gh_result* r, size_t c);
GH_API double gh_result_value(const gh_result* r, size_t row, size_t col);
GH_API gh_status gh_result_write_csv(const gh_result* r, const char* path);
GH_API void gh_result_destroy(gh_result* r);

/* Pipelines. method: 0 = frequency boxes, 1 = STFT. */
GH_API gh_status gh_modulation_norm(const gh_function* f, double p, double q, double s, int method, double* out);
/* Frozen 12-function battery built from seed. */
GH_API gh_status gh_garding_constant(const gh_symbol* a, const gh_symbol* b, int k, double t, const gh_grid* g,
                                     unsigned long long seed, double* out);
GH_API gh_status gh_solve_linear(const gh_problem* p, const gh_function* u0, double sigma, double t,
                                 gh_trajectory** out);
GH_API gh_status gh_propagator_matrix(const gh_problem* p, double sigma, double t, gh_operator** out);
/* Table zx, zxi, C; scalars ratio, max, min. z on the 1/2 lattice with
 * |z| <= radius, every stride-th node. */
GH_API gh_status gh_energy_uniformity(const gh_problem* p, int k, const gh_function* g, double radius, int stride,
                                      gh_result** out);
GH_API gh_status gh_analytic_energy(const gh_function* u, double eps, int N, double* out);
/* Table N, ratio; scalar spread (max / min ratio). */
GH_API gh_status gh_analytic_stability(const gh_problem* p, const gh_function* u0, double eps, const int* N,
                                       size_t count, gh_result** out);
/* guess: 0 = zero, 1 = linear solution. Diagnostics: scalars converged,
 * T0_used, restarts, iterations, max_ratio, duhamel_residual; table
 * iteration, gap. */
GH_API gh_status gh_picard_solve(const gh_problem* p, const gh_nonlinearity* nl, const gh_function* u0, double pn,
                                 double s, double tol, int max_iter, int guess, gh_trajectory** traj,
                                 gh_result** diagnostics);
GH_API gh_status gh_lipschitz_check(const gh_problem* p, const gh_nonlinearity* nl, const gh_function* u0,
                                    const gh_function* v0, double pn, double s, double tol, int max_iter,
                                    double* out);
/* Table t, sup. */
GH_API gh_status gh_contro1(const gh_grid* g, const double* t, size_t count, gh_result** out);
/* Table L, ratio; scalar growth (last / first). */
GH_API gh_status gh_contro2(double p, double q, const double* L, size_t count, gh_result** out);
/* Table angle, exponent, member; scalar members. */
GH_API gh_status gh_wavefront(const gh_function* f, const gh_function* g, int angular_n, double threshold,
                              gh_result** out);
/* Table angle, before, after (membership flags); scalars contained, extra. */
GH_API gh_status gh_pseudolocality(const gh_problem* p, double t, const gh_function* f, const gh_function* g,
                                   int angular_n, double threshold, gh_result** out);
/* Scalars noncharacteristic, margin, samples. */
GH_API gh_status gh_noncharacteristic(const gh_symbol* s, double m, double x0, double xi0, double eps, double c,
                                      gh_result** out);

#ifdef __cplusplus
}
#endif

#endif /* GABORHEAT_H */
