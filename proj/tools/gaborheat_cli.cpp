// Command-line driver: one subcommand per pipeline, JSON config in, CSV and a
// run manifest out. Links only the C API.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaborheat/gaborheat.h"
#include "json.hpp"
#include "schema_check.hpp"
#include "schema_text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonconvergence = 3;
constexpr int kExitHypothesis = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& m) { throw CliError{kExitConfig, m}; }

void check(gh_status s, const char* what) {
  if (s == GH_OK) return;
  int code = kExitFailure;
  switch (s) {
    case GH_ERR_CONFIG:
    case GH_ERR_INVALID_ARGUMENT:
      code = kExitConfig;
      break;
    case GH_ERR_NONCONVERGENCE:
      code = kExitNonconvergence;
      break;
    case GH_ERR_HYPOTHESIS:
      code = kExitHypothesis;
      break;
    default:
      break;
  }
  throw CliError{code, std::string(what) + ": " + gh_last_error()};
}

template <class T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using Grid = std::unique_ptr<gh_grid, Deleter<gh_grid, gh_grid_destroy>>;
using Func = std::unique_ptr<gh_function, Deleter<gh_function, gh_function_destroy>>;
using Sym = std::unique_ptr<gh_symbol, Deleter<gh_symbol, gh_symbol_destroy>>;
using Op = std::unique_ptr<gh_operator, Deleter<gh_operator, gh_operator_destroy>>;
using Field = std::unique_ptr<gh_field, Deleter<gh_field, gh_field_destroy>>;
using Problem = std::unique_ptr<gh_problem, Deleter<gh_problem, gh_problem_destroy>>;
using Nonlin = std::unique_ptr<gh_nonlinearity, Deleter<gh_nonlinearity, gh_nonlinearity_destroy>>;
using Traj = std::unique_ptr<gh_trajectory, Deleter<gh_trajectory, gh_trajectory_destroy>>;
using Result = std::unique_ptr<gh_result, Deleter<gh_result, gh_result_destroy>>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double norm_exponent(const json& v) {
  if (v.is_string()) return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

json norm_to_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

class Run {
 public:
  Run(std::string sub, json cfg, fs::path staging, unsigned long long seed)
      : sub_(std::move(sub)), cfg_(std::move(cfg)), staging_(std::move(staging)), seed_(seed) {}

  void execute();
  const json& scalars() const { return scalars_; }
  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  // Config accessors with defaults.
  json section(const char* name) const { return cfg_.value(name, json::object()); }
  double param(const char* key, double dflt) const { return section("params").value(key, dflt); }
  int iparam(const char* key, int dflt) const { return section("params").value(key, dflt); }
  std::vector<double> list(const char* key, std::vector<double> dflt) const {
    const json p = section("params");
    return p.contains(key) ? p[key].get<std::vector<double>>() : dflt;
  }
  double T() const { return section("time").value("T", 0.1); }
  double dt() const { return section("time").value("dt", 0.01); }
  double norm_p() const { return section("norm").contains("p") ? norm_exponent(section("norm")["p"]) : 2.0; }
  double norm_q() const { return section("norm").contains("q") ? norm_exponent(section("norm")["q"]) : 2.0; }
  double norm_s() const { return section("norm").value("s", 0.0); }
  std::string initial(const char* key, const char* dflt) const { return section("initial").value(key, dflt); }

  Grid grid();
  Sym symbol(const char* key, const char* dflt);
  Func function(const gh_grid* g, const std::string& spec, unsigned long long salt = 0);
  Func window(const gh_grid* g);
  Problem problem(const gh_grid* g);
  Nonlin nonlinearity();

  std::string path(const std::string& name) {
    outputs_.push_back(name);
    return (staging_ / name).string();
  }
  void write_result(const gh_result* r, const std::string& name) {
    check(gh_result_write_csv(r, path(name).c_str()), "write");
  }
  void absorb(const gh_result* r) {
    for (size_t i = 0; i < gh_result_scalar_count(r); ++i) scalars_[gh_result_scalar_name(r, i)] = gh_result_scalar_value(r, i);
  }
  void write_rows(const std::string& name, const std::vector<std::string>& cols,
                  const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path(name));
    for (size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';
    for (const auto& r : rows) {
      for (size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << fmt(r[c]);
      os << '\n';
    }
    if (!os) throw CliError{kExitFailure, "cannot write " + name};
  }
  void write_trajectory(const gh_trajectory* tr) {
    const std::string mode = section("params").value("trajectory", "long");
    if (mode == "long") {
      check(gh_trajectory_write_csv(tr, path("trajectory.csv").c_str()), "write trajectory");
      return;
    }
    size_t count = 0;
    check(gh_trajectory_size(tr, &count), "trajectory");
    for (size_t i = 0; i < count; ++i) {
      gh_function* raw = nullptr;
      check(gh_trajectory_state(tr, i, &raw), "trajectory");
      Func f(raw);
      char name[40];
      std::snprintf(name, sizeof name, "slice_%04zu.csv", i);
      check(gh_function_write_csv(f.get(), path(name).c_str()), "write slice");
    }
  }
  void check_problem(const gh_problem* p) {
    gh_result* raw = nullptr;
    check(gh_problem_check(p, &raw), "hypothesis check");
    Result r(raw);
    double w = 0.0;
    gh_result_scalar(r.get(), "warnings", &w);
    scalars_["hypothesis_warnings"] = w;
    gh_result_scalar(r.get(), "a_lower_bound", &w);
    scalars_["a_lower_bound"] = w;
  }

  void cmd_stft();
  void cmd_modnorm();
  void cmd_quantize();
  void cmd_garding();
  void cmd_propagate();
  void cmd_gabor_decay();
  void cmd_energy_uniformity();
  void cmd_symbol_extract();
  void cmd_analytic_energy();
  void cmd_picard();
  void cmd_lipschitz();
  void cmd_contro1();
  void cmd_contro2();
  void cmd_wavefront();
  void cmd_pseudolocality();

  std::string sub_;
  json cfg_;
  fs::path staging_;
  unsigned long long seed_;
  json scalars_ = json::object();
  std::vector<std::string> outputs_;
};

Grid Run::grid() {
  const json g = section("grid");
  gh_grid* raw = nullptr;
  check(gh_grid_create(g.value("d", 1), g.value("L", 40.0), g.value("n", 512), &raw), "grid");
  return Grid(raw);
}

Sym Run::symbol(const char* key, const char* dflt) {
  const std::string text = section("symbols").value(key, dflt);
  gh_symbol* raw = nullptr;
  check(gh_symbol_parse(text.c_str(), &raw), (std::string("symbol ") + key).c_str());
  return Sym(raw);
}

Func Run::function(const gh_grid* g, const std::string& spec, unsigned long long salt) {
  gh_function* raw = nullptr;
  if (spec == "window")
    check(gh_function_window(g, &raw), "window");
  else if (spec == "delta")
    check(gh_function_delta(g, 0.0, &raw), "delta");
  else if (spec == "random")
    check(gh_function_random(g, seed_ + salt, &raw), "random function");
  else if (!spec.empty() && spec[0] == '@')
    check(gh_function_read_csv(spec.substr(1).c_str(), &raw), "read function");
  else
    check(gh_function_from_expression(g, spec.c_str(), &raw), "function expression");
  return Func(raw);
}

Func Run::window(const gh_grid* g) { return function(g, "window"); }

Problem Run::problem(const gh_grid* g) {
  Sym a = symbol("a", "heat");
  Sym b = symbol("b", "zero");
  gh_problem* raw = nullptr;
  check(gh_problem_create(a.get(), b.get(), T(), dt(), g, &raw), "problem");
  Problem p(raw);
  const json tol = section("tolerances");
  if (tol.contains("garding_slack")) check(gh_problem_set_slack(p.get(), tol["garding_slack"].get<double>()), "slack");
  return p;
}

Nonlin Run::nonlinearity() {
  const json nl = section("nonlinearity");
  std::vector<int> j, k;
  std::vector<double> re, im;
  for (const auto& c : nl.value("coeffs", json::array())) {
    const double cj = c[0].get<double>(), ck = c[1].get<double>();
    if (cj != std::floor(cj) || ck != std::floor(ck)) config_error("monomial exponents must be integers");
    j.push_back(int(cj));
    k.push_back(int(ck));
    re.push_back(c[2].get<double>());
    im.push_back(c[3].get<double>());
  }
  const std::string g = nl.value("g", "1");
  gh_nonlinearity* raw = nullptr;
  check(gh_nonlinearity_create(g.c_str(), j.data(), k.data(), re.data(), im.data(), j.size(), &raw), "nonlinearity");
  return Nonlin(raw);
}

void Run::cmd_stft() {
  Grid g = grid();
  Func f = function(g.get(), initial("f", "exp(-x^2/2)"));
  Func w = window(g.get());
  gh_field* raw = nullptr;
  check(gh_field_stft(f.get(), w.get(), param("alpha", 0.5), param("beta", 0.5), &raw), "stft");
  Field field(raw);
  size_t rows = 0;
  check(gh_field_size(field.get(), &rows, nullptr), "stft");
  scalars_["lattice_points"] = double(rows);
  check(gh_field_write_csv(field.get(), path("stft.csv").c_str()), "write stft");
}

void Run::cmd_modnorm() {
  Grid g = grid();
  Func f = function(g.get(), initial("f", "exp(-x^2/2)"));
  double boxes = 0.0, stft = 0.0;
  check(gh_modulation_norm(f.get(), norm_p(), norm_q(), norm_s(), 0, &boxes), "modulation norm");
  check(gh_modulation_norm(f.get(), norm_p(), norm_q(), norm_s(), 1, &stft), "modulation norm");
  scalars_["boxes"] = boxes;
  scalars_["stft"] = stft;
  scalars_["ratio"] = stft / boxes;
  write_rows("modnorm.csv", {"method", "p", "q", "s", "value"},
             {{0.0, norm_p(), norm_q(), norm_s(), boxes}, {1.0, norm_p(), norm_q(), norm_s(), stft}});
}

void Run::cmd_quantize() {
  Grid g = grid();
  Sym a = symbol("a", "heat");
  gh_operator* raw = nullptr;
  check(gh_operator_quantize(a.get(), param("t", 0.0), g.get(), &raw), "quantize");
  Op op(raw);
  double dev = 0.0;
  size_t n = 0;
  check(gh_operator_hermitian_deviation(op.get(), &dev), "quantize");
  check(gh_operator_size(op.get(), &n), "quantize");
  scalars_["hermitian_deviation"] = dev;
  scalars_["n"] = double(n);
  check(gh_operator_write_wopm(op.get(), path("operator.wopm").c_str()), "write operator");
  std::vector<double> re(n * n), im(n * n);
  check(gh_operator_entries(op.get(), re.data(), im.data(), n * n), "quantize");
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < n; ++i) rows.push_back({double(i), re[i * n + i], im[i * n + i]});
  write_rows("diagonal.csv", {"index", "re", "im"}, rows);
}

void Run::cmd_garding() {
  Grid g = grid();
  Sym a = symbol("a", "heat");
  Sym b = symbol("b", "zero");
  const int k = iparam("k", 0);
  double c = 0.0;
  check(gh_garding_constant(a.get(), b.get(), k, param("t", 0.0), g.get(), seed_, &c), "garding");
  scalars_["C_est"] = c;
  write_rows("garding.csv", {"k", "C_est"}, {{double(k), c}});
}

void Run::cmd_propagate() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Func u0 = function(g.get(), initial("u0", "exp(-x^2/2)"));
  gh_trajectory* raw = nullptr;
  check(gh_solve_linear(p.get(), u0.get(), param("sigma", 0.0), param("t", T()), &raw), "propagate");
  Traj tr(raw);
  size_t count = 0;
  check(gh_trajectory_size(tr.get(), &count), "propagate");
  scalars_["steps"] = double(count - 1);
  write_trajectory(tr.get());
  gh_function* last = nullptr;
  check(gh_trajectory_state(tr.get(), count - 1, &last), "propagate");
  Func fin(last);
  check(gh_function_write_csv(fin.get(), path("final.csv").c_str()), "write final state");
  if (section("params").value("write_matrix", false)) {
    gh_operator* op = nullptr;
    check(gh_propagator_matrix(p.get(), param("sigma", 0.0), param("t", T()), &op), "propagator");
    Op S(op);
    check(gh_operator_write_wopm(S.get(), path("propagator.wopm").c_str()), "write propagator");
  }
}

void Run::cmd_gabor_decay() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Func w = window(g.get());
  gh_field* raw = nullptr;
  check(gh_field_gabor_matrix(p.get(), param("t", T()), w.get(), &raw), "gabor matrix");
  Field field(raw);
  gh_result* rr = nullptr;
  check(gh_field_decay_fit(field.get(), param("bin_width", 0.5), 0.0, -1.0, &rr), "decay fit");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "decay.csv");
  if (section("params").value("write_matrix", false))
    check(gh_field_write_csv(field.get(), path("gabor.csv").c_str()), "write gabor matrix");
}

void Run::cmd_energy_uniformity() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Func w = window(g.get());
  gh_result* rr = nullptr;
  check(gh_energy_uniformity(p.get(), iparam("k", 1), w.get(), param("z_radius", 8.0), iparam("z_stride", 4), &rr),
        "energy uniformity");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "uniformity.csv");
}

void Run::cmd_symbol_extract() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  auto extracted = [&](double t) {
    gh_operator* op = nullptr;
    check(gh_propagator_matrix(p.get(), 0.0, t, &op), "propagator");
    Op S(op);
    gh_symbol* s = nullptr;
    check(gh_operator_extract_symbol(S.get(), &s), "extract symbol");
    return Sym(s);
  };
  const double t = param("t", T());
  Sym sym = extracted(t);
  gh_result* tab = nullptr;
  check(gh_symbol_tabulate(sym.get(), g.get(), 0.0, iparam("stride", 8), &tab), "tabulate");
  Result table(tab);
  write_result(table.get(), "symbol.csv");

  const int order = iparam("max_order", 2);
  std::vector<std::vector<double>> rows;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double ts : list("seminorm_times", {t})) {
    Sym s = ts == t ? extracted(t) : extracted(ts);
    const double zero = 0.0;
    gh_result* rep = nullptr;
    check(gh_symbol_seminorms(s.get(), g.get(), &zero, 1, order, &rep), "seminorms");
    Result r(rep);
    double top = 0.0;
    for (size_t i = 0; i < gh_result_rows(r.get()); ++i) {
      const double v = gh_result_value(r.get(), i, 2);
      rows.push_back({ts, gh_result_value(r.get(), i, 0), gh_result_value(r.get(), i, 1), v});
      top = std::max(top, v);
    }
    lo = std::min(lo, top);
    hi = std::max(hi, top);
  }
  scalars_["seminorm_spread"] = hi / lo;
  write_rows("seminorms.csv", {"t", "alpha", "beta", "sup"}, rows);
}

void Run::cmd_analytic_energy() {
  Grid g = grid();
  Func u0 = function(g.get(), initial("u0", "exp(-x^2/2)"));
  const double eps = param("eps", 0.25);
  std::vector<int> Ns;
  for (double v : list("N", {0, 1, 2, 3, 4, 5, 6, 7, 8})) Ns.push_back(int(v));
  std::vector<std::vector<double>> rows;
  for (int N : Ns) {
    double e = 0.0;
    check(gh_analytic_energy(u0.get(), eps, N, &e), "analytic energy");
    rows.push_back({double(N), e});
  }
  write_rows("energy.csv", {"N", "energy"}, rows);
  Problem p = problem(g.get());
  gh_result* rr = nullptr;
  check(gh_analytic_stability(p.get(), u0.get(), eps, Ns.data(), Ns.size(), &rr), "analytic stability");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "stability.csv");
}

void Run::cmd_picard() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Nonlin nl = nonlinearity();
  Func u0 = function(g.get(), initial("u0", "0.1*exp(-x^2/2)"));
  const json tol = section("tolerances");
  const int guess = section("params").value("guess", "linear") == "zero" ? 0 : 1;
  gh_trajectory* tr = nullptr;
  gh_result* diag = nullptr;
  check(gh_picard_solve(p.get(), nl.get(), u0.get(), norm_p(), norm_s(), tol.value("picard", 1e-10),
                        tol.value("max_iter", 60), guess, &tr, &diag),
        "picard");
  Traj traj(tr);
  Result d(diag);
  absorb(d.get());
  write_result(d.get(), "gaps.csv");
  write_trajectory(traj.get());
}

void Run::cmd_lipschitz() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Nonlin nl = nonlinearity();
  Func u0 = function(g.get(), initial("u0", "0.1*exp(-x^2/2)"), 1);
  Func v0;
  if (section("initial").contains("v0")) {
    v0 = function(g.get(), initial("v0", ""), 2);
  } else {
    gh_function* raw = nullptr;
    check(gh_function_scale(u0.get(), 1.0 + 1e-3, 0.0, &raw), "scale");
    v0.reset(raw);
  }
  const json tol = section("tolerances");
  double ratio = 0.0;
  check(gh_lipschitz_check(p.get(), nl.get(), u0.get(), v0.get(), norm_p(), norm_s(), tol.value("picard", 1e-10),
                           tol.value("max_iter", 60), &ratio),
        "lipschitz");
  scalars_["ratio"] = ratio;
  write_rows("lipschitz.csv", {"ratio"}, {{ratio}});
}

void Run::cmd_contro1() {
  Grid g = grid();
  const auto ts = list("t_list", {0.0, 0.25, 0.5, 1.0, 2.0});
  gh_result* rr = nullptr;
  check(gh_contro1(g.get(), ts.data(), ts.size(), &rr), "contro1");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "contro1.csv");
}

void Run::cmd_contro2() {
  const auto Ls = list("box_sizes", {20.0, 40.0, 80.0});
  gh_result* rr = nullptr;
  check(gh_contro2(norm_p(), norm_q(), Ls.data(), Ls.size(), &rr), "contro2");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "contro2.csv");
}

void Run::cmd_wavefront() {
  Grid g = grid();
  Func f = function(g.get(), initial("f", "exp(-x^2/2)"));
  Func w = window(g.get());
  gh_result* rr = nullptr;
  check(gh_wavefront(f.get(), w.get(), iparam("angular_n", 16), param("threshold", 4.0), &rr), "wavefront");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "wavefront.csv");
}

void Run::cmd_pseudolocality() {
  Grid g = grid();
  Problem p = problem(g.get());
  check_problem(p.get());
  Func f = function(g.get(), initial("f", "exp(-x^2/(2*0.01))"));
  Func w = window(g.get());
  gh_result* rr = nullptr;
  check(gh_pseudolocality(p.get(), param("t", T()), f.get(), w.get(), iparam("angular_n", 16),
                          param("threshold", 4.0), &rr),
        "pseudolocality");
  Result r(rr);
  absorb(r.get());
  write_result(r.get(), "pseudolocality.csv");
}

void Run::execute() {
  if (sub_ == "stft") return cmd_stft();
  if (sub_ == "modnorm") return cmd_modnorm();
  if (sub_ == "quantize") return cmd_quantize();
  if (sub_ == "garding") return cmd_garding();
  if (sub_ == "propagate") return cmd_propagate();
  if (sub_ == "gabor-decay") return cmd_gabor_decay();
  if (sub_ == "energy-uniformity") return cmd_energy_uniformity();
  if (sub_ == "symbol-extract") return cmd_symbol_extract();
  if (sub_ == "analytic-energy") return cmd_analytic_energy();
  if (sub_ == "picard") return cmd_picard();
  if (sub_ == "lipschitz") return cmd_lipschitz();
  if (sub_ == "contro1") return cmd_contro1();
  if (sub_ == "contro2") return cmd_contro2();
  if (sub_ == "wavefront") return cmd_wavefront();
  if (sub_ == "pseudolocality") return cmd_pseudolocality();
  config_error("unknown subcommand '" + sub_ + "'");
}

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"stft", "short-time Fourier transform of initial.f"},
    {"modnorm", "modulation norms of initial.f by both definitions"},
    {"quantize", "Weyl quantization of symbols.a"},
    {"garding", "quadratic-form lower bound for a^w + i b^w"},
    {"propagate", "solve the linear problem from initial.u0"},
    {"gabor-decay", "Gabor-matrix decay of the propagator"},
    {"energy-uniformity", "Q^{2k} energy constants over phase-space shifts"},
    {"symbol-extract", "Weyl symbol of the propagator"},
    {"analytic-energy", "analytic energy of initial.u0 and its propagation"},
    {"picard", "Duhamel-Picard solve of the semilinear problem"},
    {"lipschitz", "Lipschitz ratio of the solution map"},
    {"contro1", "sup |e^{-t x^2} - 1| on the box"},
    {"contro2", "chirp multiplier norm ratios across box sizes"},
    {"wavefront", "global wave front estimate of initial.f"},
    {"pseudolocality", "wave front containment under the propagator"},
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) config_error("cannot open config '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON in '") + path + "': " + e.what());
  }
  const json schema = json::parse(gaborheat_cli::kRunConfigSchema);
  const auto errs = gaborheat_cli::validate(schema, cfg);
  if (!errs.empty()) {
    std::string m = "config does not match the schema:";
    for (const auto& e : errs) m += "\n  " + e;
    config_error(m);
  }
  return cfg;
}

std::vector<std::string> g_warnings;

void on_warning(const char* msg, void*) {
  g_warnings.emplace_back(msg);
  std::cerr << "gaborheat: warning: " << msg << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaborheat: phase-space analysis of degenerate parabolic equations"};
  std::string config_path, out_dir = "gaborheat_out";
  unsigned threads = 0;
  long long seed = -1;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory (GABORHEAT_OUT overrides)");
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");
  app.add_option("--seed", seed, "seed for random test functions")->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", gh_version());
  app.require_subcommand(1);
  app.fallthrough();
  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  if (const char* env = std::getenv("GABORHEAT_OUT"); env && *env) out_dir = env;

  fs::path staging;
  int code = kExitOk;
  try {
    const json cfg = load_config(config_path);
    const unsigned long long s = seed >= 0 ? (unsigned long long)seed : cfg.value("seed", 1ULL);
    const unsigned nthreads = threads > 0 ? threads : cfg.value("threads", 0U);
    gh_set_threads(nthreads);
    gh_set_warning_callback(on_warning, nullptr);

    staging = fs::temp_directory_path() / ("gaborheat-" + std::to_string(::getpid()));
    fs::remove_all(staging);
    fs::create_directories(staging);
    const auto start = std::chrono::steady_clock::now();
    Run run(sub, cfg, staging, s);
    run.execute();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json manifest = {{"subcommand", sub},
                     {"version", gh_version()},
                     {"config", cfg},
                     {"config_path", config_path},
                     {"seed", s},
                     {"threads", nthreads},
                     {"wall_time_seconds", wall},
                     {"scalars", run.scalars()},
                     {"outputs", run.outputs()},
                     {"warnings", g_warnings}};
    if (cfg.contains("norm")) {
      manifest["norm"] = {{"p", norm_to_json(cfg["norm"].contains("p") ? norm_exponent(cfg["norm"]["p"]) : 2.0)},
                          {"q", norm_to_json(cfg["norm"].contains("q") ? norm_exponent(cfg["norm"]["q"]) : 2.0)}};
    }
    std::ofstream(staging / "manifest.json") << manifest.dump(2) << '\n';

    fs::create_directories(out_dir);
    for (const auto& entry : fs::directory_iterator(staging))
      fs::copy_file(entry.path(), fs::path(out_dir) / entry.path().filename(), fs::copy_options::overwrite_existing);
    std::cout << "gaborheat " << sub << ": wrote " << run.outputs().size() + 1 << " files to " << out_dir << '\n';
  } catch (const CliError& e) {
    std::cerr << "gaborheat: " << e.message << '\n';
    code = e.code;
  } catch (const std::exception& e) {
    std::cerr << "gaborheat: " << e.what() << '\n';
    code = kExitFailure;
  }
  if (!staging.empty()) {
    std::error_code ec;
    fs::remove_all(staging, ec);
  }
  return code;
}
