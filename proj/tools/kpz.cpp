// kpz: batch experiment runner.
//
// Every subcommand builds an ExperimentConfig (JSON) from its flags and hands
// it to run(); `kpz run <file>` replays a saved config. Results go to
// <out>/<id>.csv and <out>/<id>.manifest.json.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kpz/asep.hpp"
#include "kpz/asymptotics.hpp"
#include "kpz/bethe.hpp"
#include "kpz/duality.hpp"
#include "kpz/errors.hpp"
#include "kpz/fredholm.hpp"
#include "kpz/sde.hpp"
#include "kpz/stats.hpp"

#ifndef KPZ_VERSION
#define KPZ_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace kpz;

namespace {

constexpr int kExitCheckFailed = 2;

struct ExperimentConfig {
  std::string id;
  std::string operation;
  json params = json::object();
  std::uint64_t seed = 0;
  std::string out;
  json tolerances = json::object();

  json to_json() const {
    return json{{"id", id},     {"operation", operation}, {"params", params},
                {"seed", seed}, {"out", out},             {"tolerances", tolerances}};
  }
  static ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;
    try {
      c.operation = j.at("operation").get<std::string>();
      c.id = j.value("id", c.operation);
      c.params = j.value("params", json::object());
      c.seed = j.value("seed", std::uint64_t{0});
      c.out = j.value("out", std::string{});
      c.tolerances = j.value("tolerances", json::object());
    } catch (const json::exception& e) {
      fail(ErrorClass::invalid_input, std::string("bad config: ") + e.what());
    }
    return c;
  }
};

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
  std::string relation;
};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<double>& v) { rows_.push_back(v); }
  bool empty() const { return rows_.empty(); }
  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << quote(header_[i]);
    os << "\r\n";
    char buf[64];
    for (auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", r[i]);
        os << (i ? "," : "") << buf;
      }
      os << "\r\n";
    }
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

struct RunResult {
  std::vector<Check> checks;
  json values = json::object();
  Csv csv{{}};
};

// ---- parameter access ----

double num(const json& p, const char* key, double def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_number()) fail(ErrorClass::invalid_input, std::string("parameter '") + key + "' must be a number");
  return p[key].get<double>();
}

std::vector<double> vec(const json& p, const char* key, std::vector<double> def) {
  if (!p.contains(key)) return def;
  try {
    return p[key].get<std::vector<double>>();
  } catch (const json::exception&) {
    fail(ErrorClass::invalid_input, std::string("parameter '") + key + "' must be a list of numbers");
  }
}

std::string str(const json& p, const char* key, const std::string& def) {
  if (!p.contains(key)) return def;
  if (!p[key].is_string()) fail(ErrorClass::invalid_input, std::string("parameter '") + key + "' must be a string");
  return p[key].get<std::string>();
}

double tol(const ExperimentConfig& c, const char* key, double def) { return num(c.tolerances, key, def); }

ModelParams model(const json& p) {
  if (p.contains("p")) return ModelParams::from_p(num(p, "p", 0.5));
  return ModelParams::from_tau(num(p, "tau", 0.5));
}

SimSpec sim_spec(const ExperimentConfig& c, double default_dt, std::size_t default_paths) {
  SimSpec s;
  s.params = model(c.params);
  s.dt = num(c.params, "dt", default_dt);
  s.t_end = num(c.params, "t", 0.5);
  double paths = num(c.params, "paths", static_cast<double>(default_paths));
  if (!(paths >= 1)) fail(ErrorClass::invalid_input, "paths must be >= 1");
  s.n_paths = static_cast<std::size_t>(paths);
  s.seed = c.seed;
  s.scheme = scheme_from_name(str(c.params, "scheme", "bridge"));
  s.potential.epsilon = num(c.params, "epsilon", 0.1);
  return s;
}

void check(RunResult& r, std::string name, double value, double tolerance, bool pass, std::string relation) {
  r.checks.push_back({std::move(name), value, tolerance, pass, std::move(relation)});
}

void check_z(RunResult& r, const std::string& name, double diff, double se, double k) {
  double z = se > 0 ? diff / se : (diff == 0 ? 0.0 : INFINITY);
  check(r, name, std::abs(z), k, std::abs(z) <= k, "|diff|/stderr <=");
}

json mc_json(const McRun& m) {
  return json{{"estimator", m.estimator}, {"mean", m.mean},  {"stderr", m.stderr_},
              {"n_paths", m.n_paths},     {"seed", m.seed}, {"spec", m.spec_echo}};
}

// ---- experiments ----

RunResult op_simulate(const ExperimentConfig& c) {
  RunResult r;
  SimSpec s = sim_spec(c, 1e-3, 1000);
  auto y0 = Config::increasing(vec(c.params, "y0", {0.0, 0.5}));
  auto out = s.scheme == Scheme::potential ? simulate_potential(s, y0) : simulate_oblique(s, y0);
  std::vector<std::string> h = {"path"};
  for (std::size_t j = 0; j < y0.size(); ++j) h.push_back("y" + std::to_string(j + 1));
  r.csv = Csv(h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double> row = {static_cast<double>(i)};
    for (double v : out[i].positions()) row.push_back(v);
    r.csv.row(row);
  }
  r.values["spec"] = s.echo();
  return r;
}

RunResult op_asep(const ExperimentConfig& c) {
  RunResult r;
  auto p = model(c.params);
  auto x = Config::decreasing(vec(c.params, "x", {1.0, -1.0}));
  auto y = Config::increasing(vec(c.params, "y", {0.0, 2.0}));
  double paths = num(c.params, "paths", 100000);
  auto d = asep_duality_check(x, y, num(c.params, "t", 2.0), num(c.params, "epsilon", 1.0), p,
                              static_cast<std::size_t>(paths), c.seed);
  r.values["lhs"] = mc_json(d.lhs);
  r.values["rhs"] = mc_json(d.rhs);
  check_z(r, "lattice duality", d.lhs.mean - d.rhs.mean, d.combined_stderr, tol(c, "z", 3.0));
  return r;
}

RunResult op_duality_check(const ExperimentConfig& c) {
  RunResult r;
  SimSpec s = sim_spec(c, 1e-4, 100000);
  auto x = Config::decreasing(vec(c.params, "x", {0.5, 0.1}));
  auto y = Config::increasing(vec(c.params, "y", {0.0, 0.3}));
  SimSpec s2 = s;
  s2.seed = s.seed ^ 0x9e3779b97f4a7c15ULL;
  auto xs = simulate_dual(s, x);
  auto ys = simulate_oblique(s2, y);
  std::vector<double> a, b;
  for (auto& v : xs) a.push_back(duality_H(v, y, s.params));
  for (auto& v : ys) b.push_back(duality_H(x, v, s.params));
  auto A = summarize("E_x H(x(t), y)", a, s.seed, s.echo()), B = summarize("E_y H(x, y(t))", b, s2.seed, s2.echo());
  r.values["lhs"] = mc_json(A);
  r.values["rhs"] = mc_json(B);
  check_z(r, "duality", A.mean - B.mean, std::hypot(A.stderr_, B.stderr_), tol(c, "z", 3.0));
  return r;
}

RunResult op_genfun(const ExperimentConfig& c) {
  RunResult r;
  auto p = model(c.params);
  auto x = Config::decreasing(vec(c.params, "x", {1.0}));
  double t = num(c.params, "t", 1.0);
  ContourOptions o;
  o.tol = tol(c, "quadrature", 1e-12);
  auto f = f_n_contour(x, t, p, NestedContours::equal_gap(static_cast<int>(x.size()), p.tau), o);
  r.values["f_n_contour"] = f.value;
  r.values["imag_residual"] = f.imag_residual;
  r.values["f_n_initial"] = f_n_initial(x, p);
  double paths = num(c.params, "paths", 0);
  if (paths > 0) {
    SimSpec s = sim_spec(c, 5e-3, static_cast<std::size_t>(paths));
    auto m = mc_generating_moment(x, t, p, num(c.params, "L", default_poisson_L(x, t)), s);
    r.values["e1"] = mc_json(m.e1);
    r.values["e2"] = mc_json(m.e2);
    double k = tol(c, "z", 3.0);
    check_z(r, "contour vs dual MC", f.value - m.e1.mean, m.e1.stderr_, k);
    check_z(r, "contour vs Poisson MC", f.value - m.e2.mean, m.e2.stderr_, k);
  }
  return r;
}

RunResult op_transition(const ExperimentConfig& c) {
  RunResult r;
  int n = static_cast<int>(num(c.params, "n", 2));
  if (n < 1 || n > 3) fail(ErrorClass::capacity, "transition checks support n <= 3");
  double t = num(c.params, "t", 0.5);
  std::string which = str(c.params, "check", "all");
  std::vector<double> yv = vec(c.params, "y", {}), xv = vec(c.params, "x", {});
  if (yv.empty())
    for (int j = 0; j < n; ++j) yv.push_back(0.5 * j);
  if (xv.empty())
    for (int j = 0; j < n; ++j) xv.push_back(0.45 * j + 0.1);
  auto Y = Config::increasing(yv), X = Config::increasing(xv);
  double rel = tol(c, "relative", 1e-8);
  if (which == "all" || which == "permanent") {
    double q = transition_density_Q(Y, X, t, ModelParams::from_p(0.5)).value;
    double ref = transition_permanent_tau1(Y, X, t);
    double e = std::abs(q - ref) / std::abs(ref);
    check(r, "tau = 1 permanent", e, rel, e <= rel, "relative error <=");
  }
  if (which == "all" || which == "determinant") {
    double q = transition_density_Q(Y, X, t, ModelParams::from_p(0.0)).value;
    double spread = std::max(X[n - 1], Y[n - 1]) - std::min(X[0], Y[0]);
    double ref = transition_det_q1(Y, X, t, VerticalContour::design(1.0, t, spread, 1.0)).value;
    double e = std::abs(q - ref) / std::abs(ref);
    check(r, "q = 1 determinant", e, rel, e <= rel, "relative error <=");
  }
  if (which == "all" || which == "normalization") {
    auto p = model(c.params);
    double g = cdf_gN(Y[n - 1] + 8 * std::sqrt(t), Y, t, p).value;
    double e = std::abs(g - 1.0);
    double k = tol(c, "normalization", 1e-3);
    check(r, "g_N(u_large) = 1", e, k, e <= k, "|g - 1| <=");
    r.csv = Csv({"u", "g_N"});
    for (double u = Y[0] - 2.0; u <= Y[n - 1] + 4.0 + 1e-12; u += 0.1) r.csv.row({u, cdf_gN(u, Y, t, p).value});
  }
  if (r.checks.empty()) fail(ErrorClass::invalid_input, "check must be all, permanent, determinant or normalization");
  return r;
}

std::vector<double> parse_grid(const std::string& g) {
  double a, b, h;
  char c1, c2;
  std::istringstream is(g);
  if (!(is >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0) || b < a)
    fail(ErrorClass::invalid_input, "grid must be lo:hi:step");
  std::vector<double> v;
  for (long k = 0;; ++k) {
    double x = a + k * h;
    if (x > b + 1e-9 * h) break;
    v.push_back(x);
  }
  return v;
}

RunResult op_fredholm(const ExperimentConfig& c) {
  RunResult r;
  std::string kernel = str(c.params, "kernel", "tw");
  FredholmOptions fo;
  fo.tol = tol(c, "fredholm", 1e-10);
  if (kernel == "tw") {
    std::string dist = str(c.params, "dist", "gue");
    if (dist != "gue" && dist != "goe") fail(ErrorClass::invalid_input, "dist must be gue or goe");
    auto F = dist == "gue" ? tw_gue_cdf : tw_goe_cdf;
    r.csv = Csv({"s", dist == "gue" ? "F_GUE" : "F_GOE"});
    for (double s : parse_grid(str(c.params, "grid", "-4:2:0.25"))) r.csv.row({s, F(s)});
    if (c.params.value("moments", false)) {
      auto m = cdf_moments(F);
      r.values["mean"] = m.mean;
      r.values["variance"] = m.variance;
    }
    return r;
  }
  auto p = model(c.params);
  DetSpec ds;
  ds.params = p;
  ds.u = num(c.params, "u", 1.0);
  ds.fred = fo;
  if (kernel == "K" || kernel == "Kzeta" || kernel == "both") {
    std::vector<double> zetas = vec(c.params, "zeta", {-0.1});
    double tg = num(c.params, "t", 1.0);  // gamma clock
    r.csv = Csv({"zeta", "det_K", "det_K_zeta"});
    for (double z : zetas) {
      double a = NAN, b = NAN;
      if (kernel != "Kzeta") {
        DetSpec k = ds;
        k.t = tg / p.gamma;
        a = det_K(z, k).value.real();
      }
      if (kernel != "K") {
        DetSpec k = ds;
        k.t = tg;
        b = det_K_zeta(z, k).value.real();
      }
      r.csv.row({z, a, b});
      if (kernel == "both") {
        double d = std::abs(a - b), k = tol(c, "representation", 1e-4);
        check(r, "det(1+K) = det(1+K_zeta) at zeta " + std::to_string(z), d, k, d <= k, "|difference| <=");
      }
    }
    return r;
  }
  if (kernel == "Kr") {
    double a = num(c.params, "a", 2.0);
    r.csv = Csv({"r", "det_Kr", "F_GUE"});
    for (double x : parse_grid(str(c.params, "grid", "-1:1:1"))) {
      double d = det_Kr(a, x, {}, fo).value.real();
      r.csv.row({x, d, tw_gue_cdf(x)});
    }
    return r;
  }
  fail(ErrorClass::invalid_input, "kernel must be tw, K, Kzeta, both or Kr");
}

RunResult op_scaling(const ExperimentConfig& c) {
  RunResult r;
  SimSpec s = sim_spec(c, 0.05, 1000);
  double a = num(c.params, "a", 1.0), t = num(c.params, "t", 50.0);
  auto run = scaling_experiment(a, t, static_cast<std::size_t>(num(c.params, "particles", 200)), s, true);
  r.csv = Csv({"replica", "N", "r"});
  for (std::size_t i = 0; i < run.counts.size(); ++i) r.csv.row({static_cast<double>(i), run.counts[i], run.r[i]});
  int in = 0;
  for (double n : run.counts) in += std::abs(n - run.lln) <= 5 * std::cbrt(t);
  double frac = in / static_cast<double>(run.counts.size());
  r.values["mean_count"] = run.mean_count;
  r.values["lln"] = run.lln;
  r.values["ks_lattice"] = run.ks_lattice;
  r.values["spec"] = run.echo;
  check(r, "LLN window fraction", frac, 0.95, frac >= 0.95, ">=");
  double k = tol(c, "ks", 0.08);
  check(r, "KS vs F_GUE", run.ks, k, run.ks <= k, "<=");
  return r;
}

RunResult op_constants(const ExperimentConfig& c) {
  RunResult r;
  std::string prof = str(c.params, "profile", "point");
  MacroProfile P = MacroProfile::point_interaction();
  if (prof == "gaussian")
    P = MacroProfile::gaussian_chain();
  else if (prof != "point")
    fail(ErrorClass::invalid_input, "profile must be point or gaussian");
  std::string kind = str(c.params, "kind", "wedge");
  double ell = num(c.params, "ell", 1.0), gamma = num(c.params, "gamma", 1.0);
  KpzConstants k;
  if (kind == "wedge")
    k = kpz_constants_wedge(ell, gamma, P, num(c.params, "phi_second_sign", 1.0));
  else if (kind == "flat")
    k = kpz_constants_flat(ell, num(c.params, "u", 0.0), gamma, P);
  else if (kind == "stationary")
    k = kpz_constants_stationary(ell, gamma, P);
  else
    fail(ErrorClass::invalid_input, "kind must be wedge, flat or stationary");
  r.values["A"] = k.A;
  r.values["lambda"] = k.lambda;
  r.values["sign"] = k.sign;
  r.values["scale_coeff"] = k.scale_coeff;
  r.values["linear"] = k.linear;
  r.values["index_rate"] = k.index_rate;
  return r;
}

RunResult dispatch(const ExperimentConfig& c) {
  const std::string& op = c.operation;
  if (op == "simulate") return op_simulate(c);
  if (op == "asep") return op_asep(c);
  if (op == "duality-check") return op_duality_check(c);
  if (op == "genfun") return op_genfun(c);
  if (op == "transition") return op_transition(c);
  if (op == "fredholm") return op_fredholm(c);
  if (op == "scaling") return op_scaling(c);
  if (op == "constants") return op_constants(c);
  fail(ErrorClass::invalid_input, "unknown experiment '" + op + "'");
}

int run(const ExperimentConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult r = dispatch(c);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  json checks = json::array();
  for (auto& k : r.checks) {
    ok = ok && k.pass;
    checks.push_back(
        {{"name", k.name}, {"value", k.value}, {"relation", k.relation}, {"tolerance", k.tolerance}, {"pass", k.pass}});
  }
  json manifest = {{"config", c.to_json()},
                   {"version", KPZ_VERSION},
                   {"wall_seconds", wall},
                   {"values", r.values},
                   {"checks", checks},
                   {"pass", ok}};
  if (c.out.empty()) {
    std::cout << manifest.dump(2) << "\n";
    if (!r.csv.empty()) r.csv.write(std::cout);
  } else {
    std::filesystem::create_directories(c.out);
    std::filesystem::path dir(c.out);
    std::ofstream(dir / (c.id + ".manifest.json")) << manifest.dump(2) << "\n";
    if (!r.csv.empty()) {
      std::ofstream f(dir / (c.id + ".csv"), std::ios::binary);
      r.csv.write(f);
    }
    std::ofstream(dir / (c.id + ".config.json")) << c.to_json().dump(2) << "\n";
    std::cerr << (ok ? "pass" : "FAIL") << ": " << (dir / (c.id + ".manifest.json")).string() << "\n";
  }
  return ok ? 0 : kExitCheckFailed;
}

// Flags shared by all subcommands; values land in the config only when given.
struct Common {
  std::uint64_t seed = 0;
  std::string out, id;
  double paths = 0, dt = 0, t = 0, tol = 0, tau = 0;
  std::string scheme;
  std::string dump;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--out", c.out, "output directory (stdout if omitted)");
  sub->add_option("--id", c.id, "experiment id (file stem)");
  sub->add_option("--paths", c.paths, "number of paths / replicas");
  sub->add_option("--dt", c.dt, "time step");
  sub->add_option("--t", c.t, "time");
  sub->add_option("--tol", c.tol, "main numerical tolerance");
  sub->add_option("--tau", c.tau, "tau = p/q in (0,1]");
  sub->add_option("--scheme", c.scheme, "projection | bridge | potential");
  sub->add_option("--dump-config", c.dump, "write the resolved config to this file and exit");
}

ExperimentConfig config_from(const std::string& op, const Common& c, CLI::App* sub, json extra) {
  ExperimentConfig e;
  e.operation = op;
  e.id = c.id.empty() ? op : c.id;
  e.seed = c.seed;
  e.out = c.out;
  e.params = std::move(extra);
  if (sub->count("--paths")) e.params["paths"] = c.paths;
  if (sub->count("--dt")) e.params["dt"] = c.dt;
  if (sub->count("--t")) e.params["t"] = c.t;
  if (sub->count("--tau")) e.params["tau"] = c.tau;
  if (sub->count("--scheme")) e.params["scheme"] = c.scheme;
  if (sub->count("--tol")) {
    static const std::map<std::string, std::string> key = {
        {"genfun", "quadrature"}, {"fredholm", "fredholm"}, {"transition", "relative"}, {"scaling", "ks"},
        {"asep", "z"},            {"duality-check", "z"}};
    auto it = key.find(op);
    if (it != key.end()) e.tolerances[it->second] = c.tol;
  }
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpz: point-interacting Brownian motions, duality and Fredholm determinants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", KPZ_VERSION);
  Common common;
  ExperimentConfig cfg;
  bool have = false;

  std::string config_file;
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
  run_cmd->add_option("config", config_file, "config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", common.out, "override output directory");

  std::vector<double> y0 = {0.0, 0.5}, xs, ys;
  double eps = 0.1, u = 1.0, a = 1.0, particles = 200, ell = 1.0, gamma = 1.0, uflat = 0.0, sgn = 1.0;
  int n = 2;
  std::string check = "all", kernel = "tw", dist = "gue", grid, profile = "point", kind = "wedge";
  std::vector<double> zetas;
  bool moments = false;

  auto* sim = app.add_subcommand("simulate", "terminal positions of the oblique or potential system");
  add_common(sim, common);
  sim->add_option("--y0", y0, "initial positions")->delimiter(',');
  sim->add_option("--epsilon", eps, "potential range");

  auto* asep = app.add_subcommand("asep", "lattice duality check");
  add_common(asep, common);
  asep->add_option("--x", xs, "dual start")->delimiter(',');
  asep->add_option("--y", ys, "primal start")->delimiter(',');
  asep->add_option("--epsilon", eps, "lattice spacing");

  auto* dual = app.add_subcommand("duality-check", "E_x H(x(t),y) = E_y H(x,y(t)) by Monte Carlo");
  add_common(dual, common);
  dual->add_option("--x", xs, "dual start")->delimiter(',');
  dual->add_option("--y", ys, "primal start")->delimiter(',');

  auto* gen = app.add_subcommand("genfun", "nested-contour generating function, optional MC check");
  add_common(gen, common);
  gen->add_option("--x", xs, "points (decreasing)")->delimiter(',');

  auto* tr = app.add_subcommand("transition", "Bethe transition density checks");
  add_common(tr, common);
  tr->add_option("--n", n, "number of particles (<= 3)");
  tr->add_option("--check", check, "all | permanent | determinant | normalization");
  tr->add_option("--x", xs, "end positions")->delimiter(',');
  tr->add_option("--y", ys, "start positions")->delimiter(',');

  auto* fr = app.add_subcommand("fredholm", "Fredholm determinants (K, K_zeta, K_r, Tracy-Widom)");
  add_common(fr, common);
  fr->add_option("--kernel", kernel, "tw | K | Kzeta | both | Kr");
  fr->add_option("--dist", dist, "gue | goe (tw)");
  fr->add_option("--grid", grid, "lo:hi:step");
  fr->add_option("--zeta", zetas, "zeta values")->delimiter(',');
  fr->add_option("--u", u, "position");
  fr->add_option("--a", a, "K_r slope");
  fr->add_flag("--moments", moments, "also report mean and variance (tw)");

  auto* sc = app.add_subcommand("scaling", "finite-t scaling experiment");
  add_common(sc, common);
  sc->add_option("--a", a, "slope u = a t");
  sc->add_option("--particles", particles, "initial Poisson particles");

  auto* co = app.add_subcommand("constants", "KPZ constants of a pressure profile");
  add_common(co, common);
  co->add_option("--profile", profile, "point | gaussian");
  co->add_option("--kind", kind, "wedge | flat | stationary");
  co->add_option("--ell", ell, "density parameter");
  co->add_option("--gamma", gamma, "asymmetry");
  co->add_option("--u", uflat, "flat: velocity");
  co->add_option("--phi-second-sign", sgn, "wedge: +1 sup profile, -1 inf profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (run_cmd->parsed()) {
      std::ifstream f(config_file);
      json j;
      try {
        j = json::parse(f);
      } catch (const json::exception& e) {
        fail(ErrorClass::invalid_input, std::string("config is not valid JSON: ") + e.what());
      }
      cfg = ExperimentConfig::from_json(j);
      if (run_cmd->count("--out")) cfg.out = common.out;
      have = true;
    }
    auto opt = [](json& j, const char* k, const std::vector<double>& v) {
      if (!v.empty()) j[k] = v;
    };
    if (sim->parsed()) {
      json p = {{"y0", y0}};
      if (sim->count("--epsilon")) p["epsilon"] = eps;
      cfg = config_from("simulate", common, sim, p);
      have = true;
    } else if (asep->parsed()) {
      json p = json::object();
      opt(p, "x", xs);
      opt(p, "y", ys);
      if (asep->count("--epsilon")) p["epsilon"] = eps;
      cfg = config_from("asep", common, asep, p);
      have = true;
    } else if (dual->parsed()) {
      json p = json::object();
      opt(p, "x", xs);
      opt(p, "y", ys);
      cfg = config_from("duality-check", common, dual, p);
      have = true;
    } else if (gen->parsed()) {
      json p = json::object();
      opt(p, "x", xs);
      cfg = config_from("genfun", common, gen, p);
      have = true;
    } else if (tr->parsed()) {
      json p = {{"n", n}, {"check", check}};
      opt(p, "x", xs);
      opt(p, "y", ys);
      cfg = config_from("transition", common, tr, p);
      have = true;
    } else if (fr->parsed()) {
      json p = {{"kernel", kernel}, {"dist", dist}, {"u", u}, {"a", a}, {"moments", moments}};
      if (!grid.empty()) p["grid"] = grid;
      opt(p, "zeta", zetas);
      cfg = config_from("fredholm", common, fr, p);
      have = true;
    } else if (sc->parsed()) {
      json p = {{"a", a}, {"particles", particles}};
      cfg = config_from("scaling", common, sc, p);
      have = true;
    } else if (co->parsed()) {
      json p = {{"profile", profile}, {"kind", kind}, {"ell", ell}, {"gamma", gamma}, {"u", uflat},
                {"phi_second_sign", sgn}};
      cfg = config_from("constants", common, co, p);
      have = true;
    }
    if (!have) return 3;
    if (!common.dump.empty()) {
      std::ofstream(common.dump) << cfg.to_json().dump(2) << "\n";
      return 0;
    }
    return run(cfg);
  } catch (const Error& e) {
    std::cerr << "error [" << error_class_name(e.cls()) << "]: " << e.what() << "\n";
    return exit_code_for(e.cls());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
