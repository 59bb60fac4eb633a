#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavekin/bfunc.hpp"
#include "wavekin/cauchy.hpp"
#include "wavekin/complexfn.hpp"
#include "wavekin/config.hpp"
#include "wavekin/data.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/kernels.hpp"
#include "wavekin/kinetic.hpp"
#include "wavekin/lambda.hpp"
#include "wavekin/ufunc.hpp"
#include "wavekin/verify.hpp"

using namespace wavekin;
using json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const json& j) { std::cout << j.dump(1) << "\n"; }

// Writes to the named file, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), x);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size())
      throw ConfigError(std::string("bad number in ") + what + ": " + item);
    v.push_back(x);
  }
  return v;
}

LogGrid parse_grid(const std::string& s) {
  const auto v = parse_list(s, "--grid");
  if (v.size() != 3 || v[2] != std::floor(v[2])) throw ConfigError("--grid expects xmin,xmax,n");
  return make_log_grid(v[0], v[1], static_cast<int>(v[2]));
}

// CSV with header y,f0; support from the first and last samples unless given.
InitialDatum read_f0(const std::string& path, const std::string& support) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("y,f0", 0) != 0) throw ConfigError(path + ": expected header y,f0");
  std::vector<double> y, f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = parse_list(line, path.c_str());
    if (v.size() != 2) throw ConfigError(path + ": expected two columns");
    y.push_back(v[0]);
    f.push_back(v[1]);
  }
  if (y.size() < 2) throw ConfigError(path + ": need two or more samples");
  double a = y.front(), b = y.back();
  if (!support.empty()) {
    const auto s = parse_list(support, "--support");
    if (s.size() != 2) throw ConfigError("--support expects a,b");
    a = s[0];
    b = s[1];
  }
  return make_sampled(y, f, a, b);
}

json calibrate() {
  json j;
  double ct = 0;
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) {
      const double t = 0.1 + 0.1 * i;
      const cplx s(1.0, std::round(5 * std::pow(40.0, k / 9.0) / 0.05) * 0.05);
      ct = std::max(ct, std::abs(eval_U(t, s).value) / U_envelope(t, s));
    }
  j["C_T_U"] = ct;
  j["C_dt"] = std::abs(eval_dlambda_dt(2.0, 0.9)) * 16;
  j["C_L1"] = l1_norm_lambda(1.0) * 2;
  j["C_dx"] = std::abs(eval_dlambda_dx(2.0, 20.0)) * 16 * std::pow(10.0, 4);
  double cq = 0;
  for (double t : {2.0, 4.0, 8.0}) cq = std::max(cq, Q2_abs_integral(t) * std::pow(t, 4));
  j["C_Q2"] = cq;
  double cg = 0;
  for (double t : {0.25, 0.5, 1.0, 2.0})
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) cg = std::max(cg, G_abs_integral(t, x));
  j["C_G"] = cg;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavekin: fundamental solution and Cauchy problem of the linearized kinetic equation"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");

  // special
  auto* special = app.add_subcommand("special", "special functions");
  special->require_subcommand(1);
  auto* sp_eval = special->add_subcommand("eval", "evaluate at a complex point");
  std::string sp_fn = "W";
  double re = 0, im = 0;
  sp_eval->add_option("--fn", sp_fn, "W, Wp, Wpp, loggamma, gamma, digamma")
      ->check(CLI::IsMember({"W", "Wp", "Wpp", "loggamma", "gamma", "digamma"}));
  sp_eval->add_option("--re", re)->required();
  sp_eval->add_option("--im", im);

  // kernel
  auto* kernel = app.add_subcommand("kernel", "collision kernels");
  kernel->require_subcommand(1);
  auto* k_eval = kernel->add_subcommand("eval", "evaluate K(x,y), H(x/y) or M(x,y)");
  std::string which = "K";
  double kx = 0, ky = 0;
  k_eval->add_option("--which", which)->check(CLI::IsMember({"K", "H", "M"}));
  k_eval->add_option("--x", kx)->required();
  k_eval->add_option("--y", ky)->required();

  // bfunc
  auto* bf = app.add_subcommand("bfunc", "the function B");
  bf->require_subcommand(1);
  auto* bf_eval = bf->add_subcommand("eval", "evaluate B");
  bf_eval->add_option("--re", re)->required();
  bf_eval->add_option("--im", im);
  auto* bf_const = bf->add_subcommand("constants", "residue ledger");

  // ufunc
  auto* uf = app.add_subcommand("ufunc", "the Mellin symbol U");
  uf->require_subcommand(1);
  auto* uf_eval = uf->add_subcommand("eval", "evaluate U(t,s)");
  double ut = 0, us_re = 1, us_im = 0, udt = 1e-4;
  uf_eval->add_option("--t", ut)->required();
  uf_eval->add_option("--s-re", us_re)->required();
  uf_eval->add_option("--s-im", us_im);
  auto* uf_ode = uf->add_subcommand("verify-ode", "residual of the shift equation in t");
  uf_ode->add_option("--t", ut)->required();
  uf_ode->add_option("--s-re", us_re)->required();
  uf_ode->add_option("--s-im", us_im);
  uf_ode->add_option("--dt", udt);

  // lambda
  auto* lam = app.add_subcommand("lambda", "the fundamental solution");
  lam->require_subcommand(1);
  auto* l_eval = lam->add_subcommand("eval", "evaluate Lambda(t,x)");
  double lt = 0, lx = 0, xmin = 0.01, xmax = 100;
  int points = 100;
  std::string regime = "auto", out;
  l_eval->add_option("--t", lt)->required();
  l_eval->add_option("--x", lx)->required();
  l_eval->add_option("--regime", regime);
  auto* l_prof = lam->add_subcommand("profile", "Lambda(t,.) on a log-spaced grid, CSV");
  l_prof->add_option("--t", lt)->required();
  l_prof->add_option("--xmin", xmin);
  l_prof->add_option("--xmax", xmax);
  l_prof->add_option("--points", points)->check(CLI::Range(2, 1000000));
  l_prof->add_option("--regime", regime);
  l_prof->add_option("--out", out, "output file, stdout by default");

  // direct
  auto* direct = app.add_subcommand("direct", "discretized collision operator");
  direct->require_subcommand(1);
  auto* d_solve = direct->add_subcommand("solve", "evolve sampled data on a log grid");
  std::string grid = "0.001,1000,512", f0_path, snaps, support;
  double t_end = 0, rel_tol = 1e-7;
  bool flat_left = false;
  d_solve->add_option("--grid", grid, "xmin,xmax,n");
  d_solve->add_option("--f0", f0_path)->required();
  d_solve->add_option("--support", support, "a,b");
  d_solve->add_option("--t-end", t_end)->required();
  d_solve->add_option("--snap", snaps, "t1,t2,...: trajectory CSV t,x,u");
  d_solve->add_option("--rel-tol", rel_tol);
  d_solve->add_flag("--flat-left-tail", flat_left, "continue u as a constant below the grid");
  d_solve->add_option("--out", out);

  // cauchy
  auto* cau = app.add_subcommand("cauchy", "superposition solution");
  cau->require_subcommand(1);
  auto* c_solve = cau->add_subcommand("solve", "u(t,.) on a log grid, CSV x,u");
  double ct = 0;
  c_solve->add_option("--t", ct)->required();
  c_solve->add_option("--f0", f0_path)->required();
  c_solve->add_option("--support", support, "a,b");
  c_solve->add_option("--grid", grid, "xmin,xmax,n");
  c_solve->add_option("--out", out);

  // verify / calibrate
  auto* ver = app.add_subcommand("verify", "run an invariant suite, JSON report");
  std::string suite;
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--out", out);
  auto* cal = app.add_subcommand("calibrate", "recompute the frozen constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? load_config() : load_config_file(config_path);
    if (!cfg.cache_path.empty()) {
      bcache_enable(true);
      bcache_load(cfg.cache_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  int rc = 0;
  try {
    if (*sp_eval) {
      const cplx s(re, im);
      cplx v;
      if (sp_fn == "W") v = eval_W(s);
      else if (sp_fn == "Wp") v = eval_W_prime(s);
      else if (sp_fn == "Wpp") v = eval_W_second(s);
      else if (sp_fn == "loggamma") v = log_gamma(s);
      else if (sp_fn == "gamma") v = gamma_fn(s);
      else v = digamma(s);
      emit(json{{"fn", sp_fn}, {"s", cjson(s)}, {"value", cjson(v)}});
    } else if (*k_eval) {
      double v = 0;
      if (which == "K") v = eval_K(kx, ky);
      else if (which == "M") v = eval_M(kx, ky);
      else v = eval_H(kx / ky);
      emit(json{{"which", which}, {"x", kx}, {"y", ky}, {"value", v}});
    } else if (*bf_eval) {
      emit(json{{"s", cjson(cplx(re, im))}, {"value", cjson(eval_B(cplx(re, im)))}});
    } else if (*bf_const) {
      const auto& L = derived_constants();
      json P = json::array(), Q = json::array();
      for (const auto& p : L.P) P.push_back(cjson(p));
      for (const auto& q : L.Q) Q.push_back(cjson(q));
      emit(json{{"B1", cjson(L.B1)},     {"B5", cjson(L.B5)},     {"W1", cjson(L.W1)},     {"Wp0", cjson(L.Wp0)},
                {"Wp2", cjson(L.Wp2)},   {"rho3", cjson(L.rho3)}, {"rho4", cjson(L.rho4)}, {"resB0", cjson(L.resB0)},
                {"resBm1", cjson(L.resBm1)}, {"c1", cjson(L.c1)}, {"c2", cjson(L.c2)},     {"c3", cjson(L.c3)},
                {"P", P},                {"Q", Q}});
    } else if (*uf_eval) {
      const auto v = eval_U_auto(ut, cplx(us_re, us_im));
      emit(json{{"t", ut}, {"s", cjson(v.s)}, {"value", cjson(v.value)}, {"err", v.err}});
    } else if (*uf_ode) {
      const double r = check_U_ode(ut, cplx(us_re, us_im), udt);
      emit(json{{"t", ut}, {"s", cjson(cplx(us_re, us_im))}, {"dt", udt}, {"residual", r}});
    } else if (*l_eval) {
      const auto v = eval_lambda(LambdaQuery{lt, lx, parse_regime(regime)});
      emit(json{{"t", lt}, {"x", lx}, {"value", v.value}, {"err", v.err}, {"regime", regime_name(v.regime)}});
    } else if (*l_prof) {
      if (!(xmin > 0 && xmax > xmin)) throw ConfigError("need 0 < xmin < xmax");
      std::vector<double> x(static_cast<std::size_t>(points));
      for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = xmin * std::pow(xmax / xmin, double(i) / (points - 1));
      x.back() = xmax;
      const auto p = lambda_profile(lt, x, parse_regime(regime));
      Output o(out);
      o.os() << "t,x,lambda,err,regime\n";
      for (std::size_t i = 0; i < x.size(); ++i)
        o.os() << num(lt) << ',' << num(x[i]) << ',' << num(p[i].value) << ',' << num(p[i].err) << ','
               << regime_name(p[i].regime) << '\n';
    } else if (*d_solve) {
      const auto g = parse_grid(grid);
      const auto f0 = read_f0(f0_path, support);
      RadialProfile p{g.nodes, {}, 0};
      for (double x : g.nodes) p.values.push_back(f0(x));
      EvolveControls ctl;
      ctl.rel_tol = rel_tol;
      ctl.tails.left = flat_left;
      if (!snaps.empty()) ctl.snapshots = parse_list(snaps, "--snap");
      const auto tr = evolve(p, t_end, ctl);
      Output o(out);
      if (snaps.empty()) {
        o.os() << "x,u\n";
        for (std::size_t i = 0; i < g.nodes.size(); ++i) o.os() << num(g.nodes[i]) << ',' << num(tr.back().profile.values[i]) << '\n';
      } else {
        o.os() << "t,x,u\n";
        for (const auto& st : tr)
          for (std::size_t i = 0; i < g.nodes.size(); ++i)
            o.os() << num(st.tau) << ',' << num(g.nodes[i]) << ',' << num(st.profile.values[i]) << '\n';
      }
    } else if (*c_solve) {
      const auto g = parse_grid(grid);
      const auto p = solve_profile(ct, g, read_f0(f0_path, support));
      Output o(out);
      o.os() << "x,u\n";
      for (std::size_t i = 0; i < g.nodes.size(); ++i) o.os() << num(g.nodes[i]) << ',' << num(p.values[i]) << '\n';
    } else if (*ver) {
      const auto checks = run_suite(suite, cfg);
      Output o(out);
      o.os() << report_json(checks);
      for (const auto& c : checks)
        if (!c.pass) rc = 1;
    } else if (*cal) {
      emit(calibrate());
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!cfg.cache_path.empty()) bcache_save(cfg.cache_path);
  return rc;
}
