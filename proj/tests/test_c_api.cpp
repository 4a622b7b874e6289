#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "gaborheat/gaborheat.h"

namespace fs = std::filesystem;

namespace {
std::string tmp(const char* name) { return (fs::temp_directory_path() / name).string(); }

gh_grid* make_grid(double L = 40.0, int n = 128) {
  gh_grid* g = nullptr;
  REQUIRE(gh_grid_create(1, L, n, &g) == GH_OK);
  return g;
}
}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::strlen(gh_version()) > 0);
  gh_grid* g = nullptr;
  CHECK(gh_grid_create(1, 40.0, 7, &g) == GH_ERR_INVALID_ARGUMENT);
  CHECK(g == nullptr);
  CHECK(std::strlen(gh_last_error()) > 0);
  CHECK(gh_grid_create(1, 40.0, 64, nullptr) == GH_ERR_INVALID_ARGUMENT);
  gh_symbol* s = nullptr;
  CHECK(gh_symbol_parse("nope(", &s) == GH_ERR_CONFIG);
  gh_grid_destroy(nullptr);
}

TEST_CASE("grid and functions") {
  gh_grid* g = make_grid();
  int d = 0, n = 0;
  double L = 0.0;
  CHECK(gh_grid_info(g, &d, &L, &n) == GH_OK);
  CHECK(d == 1);
  CHECK(n == 128);
  gh_function* f = nullptr;
  REQUIRE(gh_function_from_expression(g, "exp(-x^2/2)", &f) == GH_OK);
  size_t count = 0;
  CHECK(gh_function_size(f, &count) == GH_OK);
  CHECK(count == 128);
  std::vector<double> re(count), im(count);
  CHECK(gh_function_values(f, re.data(), im.data(), count) == GH_OK);
  CHECK(re[64] == doctest::Approx(1.0));
  CHECK(gh_function_values(f, re.data(), im.data(), 3) == GH_ERR_INVALID_ARGUMENT);

  const std::string path = tmp("gh_capi_f.csv");
  CHECK(gh_function_write_csv(f, path.c_str()) == GH_OK);
  gh_function* back = nullptr;
  CHECK(gh_function_read_csv(path.c_str(), &back) == GH_OK);
  std::vector<double> re2(count), im2(count);
  gh_function_values(back, re2.data(), im2.data(), count);
  CHECK(re2 == re);
  fs::remove(path);
  CHECK(gh_function_read_csv(path.c_str(), &back) == GH_ERR_IO);

  gh_function* r1 = nullptr;
  gh_function* r2 = nullptr;
  gh_function_random(g, 5, &r1);
  gh_function_random(g, 5, &r2);
  gh_function_values(r1, re.data(), im.data(), count);
  gh_function_values(r2, re2.data(), im2.data(), count);
  CHECK(re == re2);

  gh_function* t = nullptr;
  CHECK(gh_function_from_expression(g, "t*x", &t) == GH_ERR_CONFIG);
  gh_function_destroy(f);
  gh_function_destroy(back);
  gh_function_destroy(r1);
  gh_function_destroy(r2);
  gh_grid_destroy(g);
}

TEST_CASE("symbols and operators") {
  gh_grid* g = make_grid(20.0, 64);
  gh_symbol* s = nullptr;
  REQUIRE(gh_symbol_parse("heat", &s) == GH_OK);
  double re = 0, im = 0;
  CHECK(gh_symbol_eval(s, 0.0, 1.0, 3.0, &re, &im) == GH_OK);
  CHECK(re == 9.0);
  gh_symbol* sh = nullptr;
  CHECK(gh_symbol_shift(s, 0.0, 1.0, &sh) == GH_OK);
  gh_symbol_eval(sh, 0.0, 1.0, 3.0, &re, &im);
  CHECK(re == 16.0);

  gh_operator* op = nullptr;
  REQUIRE(gh_operator_quantize(s, 0.0, g, &op) == GH_OK);
  size_t n = 0;
  gh_operator_size(op, &n);
  CHECK(n == 64);
  double dev = 1.0;
  gh_operator_hermitian_deviation(op, &dev);
  CHECK(dev < 1e-10);

  const std::string path = tmp("gh_capi_op.wopm");
  CHECK(gh_operator_write_wopm(op, path.c_str()) == GH_OK);
  gh_operator* back = nullptr;
  CHECK(gh_operator_read_wopm(path.c_str(), &back) == GH_OK);
  std::vector<double> a(n * n), ai(n * n), b(n * n), bi(n * n);
  gh_operator_entries(op, a.data(), ai.data(), n * n);
  gh_operator_entries(back, b.data(), bi.data(), n * n);
  CHECK(a == b);
  fs::remove(path);

  gh_symbol* ext = nullptr;
  CHECK(gh_operator_extract_symbol(op, &ext) == GH_OK);
  gh_symbol_eval(ext, 0.0, 0.0, 2 * 3.14159265358979323846 / 20.0 * 3, &re, &im);
  CHECK(re == doctest::Approx(std::pow(2 * 3.14159265358979323846 / 20.0 * 3, 2)).epsilon(1e-8));

  gh_result* semi = nullptr;
  const double t0 = 0.0;
  CHECK(gh_symbol_seminorms(s, g, &t0, 1, 2, &semi) == GH_OK);
  CHECK(gh_result_cols(semi) == 3);
  CHECK(std::string(gh_result_column(semi, 2)) == "sup");
  double lb = -1;
  CHECK(gh_result_scalar(semi, "lower_bound", &lb) == GH_OK);
  CHECK(lb == 0.0);
  CHECK(gh_result_scalar(semi, "nope", &lb) == GH_ERR_INVALID_ARGUMENT);

  gh_result_destroy(semi);
  gh_symbol_destroy(ext);
  gh_operator_destroy(back);
  gh_operator_destroy(op);
  gh_symbol_destroy(sh);
  gh_symbol_destroy(s);
  gh_grid_destroy(g);
}

TEST_CASE("linear pipelines") {
  gh_grid* g = make_grid();
  gh_symbol* a = nullptr;
  gh_symbol* b = nullptr;
  gh_symbol_parse("heat", &a);
  gh_symbol_parse("zero", &b);
  gh_problem* p = nullptr;
  REQUIRE(gh_problem_create(a, b, 0.2, 0.01, g, &p) == GH_OK);
  gh_result* check = nullptr;
  CHECK(gh_problem_check(p, &check) == GH_OK);
  gh_result_destroy(check);

  gh_function* u0 = nullptr;
  gh_function_from_expression(g, "exp(-x^2/2)", &u0);
  gh_trajectory* tr = nullptr;
  REQUIRE(gh_solve_linear(p, u0, 0.0, 0.2, &tr) == GH_OK);
  size_t steps = 0;
  gh_trajectory_size(tr, &steps);
  CHECK(steps == 21);
  double t = 0;
  gh_trajectory_time(tr, steps - 1, &t);
  CHECK(t == doctest::Approx(0.2));
  gh_function* last = nullptr;
  gh_trajectory_state(tr, steps - 1, &last);
  std::vector<double> re(128), im(128);
  gh_function_values(last, re.data(), im.data(), 128);
  CHECK(re[64] == doctest::Approx(1.0 / std::sqrt(1.4)).epsilon(1e-8));

  gh_function* w = nullptr;
  gh_function_window(g, &w);
  gh_result* uni = nullptr;
  CHECK(gh_energy_uniformity(p, 0, w, 4.0, 4, &uni) == GH_OK);
  double ratio = 0;
  gh_result_scalar(uni, "ratio", &ratio);
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-6));

  double c = 0;
  CHECK(gh_garding_constant(a, b, 0, 0.0, g, 1, &c) == GH_OK);
  CHECK(c <= 1e-8);

  gh_field* F = nullptr;
  REQUIRE(gh_field_gabor_matrix(p, 0.1, w, &F) == GH_OK);
  gh_result* fit = nullptr;
  CHECK(gh_field_decay_fit(F, 0.5, 0.0, -1.0, &fit) == GH_OK);
  double N = 0;
  gh_result_scalar(fit, "fitted_N", &N);
  CHECK(N >= 4.0);

  gh_result_destroy(fit);
  gh_field_destroy(F);
  gh_result_destroy(uni);
  gh_function_destroy(w);
  gh_function_destroy(last);
  gh_trajectory_destroy(tr);
  gh_function_destroy(u0);
  gh_problem_destroy(p);
  gh_symbol_destroy(a);
  gh_symbol_destroy(b);
  gh_grid_destroy(g);
}

TEST_CASE("hypothesis failures map to their status") {
  gh_grid* g = make_grid();
  gh_symbol* a = nullptr;
  gh_symbol* b = nullptr;
  gh_symbol_parse("-xi^2", &a);
  gh_symbol_parse("zero", &b);
  gh_problem* p = nullptr;
  gh_problem_create(a, b, 0.1, 0.01, g, &p);
  gh_function* u0 = nullptr;
  gh_function_from_expression(g, "exp(-x^2/2)", &u0);
  gh_trajectory* tr = nullptr;
  CHECK(gh_solve_linear(p, u0, 0.0, 0.1, &tr) == GH_ERR_HYPOTHESIS);
  CHECK(tr == nullptr);
  gh_symbol* c = nullptr;
  gh_symbol_parse("i*xi", &c);
  gh_problem* q = nullptr;
  gh_problem_create(c, b, 0.1, 0.01, g, &q);
  gh_result* r = nullptr;
  CHECK(gh_problem_check(q, &r) == GH_ERR_HYPOTHESIS);
  gh_problem_destroy(q);
  gh_symbol_destroy(c);
  gh_function_destroy(u0);
  gh_problem_destroy(p);
  gh_symbol_destroy(a);
  gh_symbol_destroy(b);
  gh_grid_destroy(g);
}

TEST_CASE("semilinear and counterexample pipelines") {
  gh_grid* g = make_grid();
  gh_symbol* a = nullptr;
  gh_symbol* b = nullptr;
  gh_symbol_parse("heat", &a);
  gh_symbol_parse("zero", &b);
  gh_problem* p = nullptr;
  gh_problem_create(a, b, 0.2, 0.01, g, &p);
  const int j = 2, k = 0;
  const double cre = 1.0, cim = 0.0;
  gh_nonlinearity* nl = nullptr;
  REQUIRE(gh_nonlinearity_create("1", &j, &k, &cre, &cim, 1, &nl) == GH_OK);
  gh_function* u0 = nullptr;
  gh_function_from_expression(g, "0.1*exp(-x^2/2)", &u0);
  gh_trajectory* tr = nullptr;
  gh_result* diag = nullptr;
  REQUIRE(gh_picard_solve(p, nl, u0, 2.0, 0.0, 1e-10, 60, 1, &tr, &diag) == GH_OK);
  double conv = 0;
  gh_result_scalar(diag, "converged", &conv);
  CHECK(conv == 1.0);
  CHECK(gh_result_rows(diag) >= 1);

  gh_function* v0 = nullptr;
  gh_function_scale(u0, 1.001, 0.0, &v0);
  double ratio = 0;
  CHECK(gh_lipschitz_check(p, nl, u0, v0, 2.0, 0.0, 1e-10, 60, &ratio) == GH_OK);
  CHECK(ratio <= 1.1);

  const double ts[] = {0.0, 1.0};
  gh_result* c1 = nullptr;
  CHECK(gh_contro1(g, ts, 2, &c1) == GH_OK);
  CHECK(gh_result_value(c1, 1, 1) == doctest::Approx(1.0));
  const double Ls[] = {20.0, 40.0};
  gh_result* c2 = nullptr;
  CHECK(gh_contro2(2.0, 2.0, Ls, 2, &c2) == GH_OK);
  double growth = 0;
  gh_result_scalar(c2, "growth", &growth);
  CHECK(growth == doctest::Approx(1.0).epsilon(1e-6));

  gh_result_destroy(c2);
  gh_result_destroy(c1);
  gh_function_destroy(v0);
  gh_result_destroy(diag);
  gh_trajectory_destroy(tr);
  gh_function_destroy(u0);
  gh_nonlinearity_destroy(nl);
  gh_problem_destroy(p);
  gh_symbol_destroy(a);
  gh_symbol_destroy(b);
  gh_grid_destroy(g);
}

namespace {
std::vector<std::string> g_seen;
void collect(const char* msg, void*) { g_seen.emplace_back(msg); }
}  // namespace

TEST_CASE("warnings reach the callback") {
  gh_set_warning_callback(collect, nullptr);
  gh_grid* g = make_grid();
  gh_function* wide = nullptr;
  gh_function_from_expression(g, "exp(-x^2/400)", &wide);
  gh_symbol* a = nullptr;
  gh_symbol* b = nullptr;
  gh_symbol_parse("heat", &a);
  gh_symbol_parse("zero", &b);
  gh_problem* p = nullptr;
  gh_problem_create(a, b, 0.05, 0.01, g, &p);
  gh_trajectory* tr = nullptr;
  g_seen.clear();
  CHECK(gh_solve_linear(p, wide, 0.0, 0.05, &tr) == GH_OK);
  REQUIRE_FALSE(g_seen.empty());
  CHECK(g_seen.front().find("initial datum") != std::string::npos);
  gh_set_warning_callback(nullptr, nullptr);
  gh_trajectory_destroy(tr);
  gh_problem_destroy(p);
  gh_symbol_destroy(a);
  gh_symbol_destroy(b);
  gh_function_destroy(wide);
  gh_grid_destroy(g);
}
