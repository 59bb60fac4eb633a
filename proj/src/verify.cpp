#include "wavekin/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "wavekin/bfunc.hpp"
#include "wavekin/cauchy.hpp"
#include "wavekin/complexfn.hpp"
#include "wavekin/contour.hpp"
#include "wavekin/data.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/kernels.hpp"
#include "wavekin/kinetic.hpp"
#include "wavekin/lambda.hpp"
#include "wavekin/ufunc.hpp"

namespace wavekin {

namespace {

struct Sink {
  int criterion;
  std::vector<Check> out;
  void le(const std::string& name, double measured, double bound) {
    out.push_back(Check{name, measured, bound, std::isfinite(measured) && measured <= bound, criterion});
  }
  void ge(const std::string& name, double measured, double bound) {
    out.push_back(Check{name, measured, bound, std::isfinite(measured) && measured >= bound, criterion});
  }
};

std::string fmt(double v) {
  nlohmann::json j = v;
  return j.dump();
}

std::string fmt(cplx s) { return fmt(s.real()) + (s.imag() < 0 ? "" : "+") + fmt(s.imag()) + "i"; }

void special_functions(Sink& k, const RunConfig& cfg) {
  k.le("W(0)", std::abs(eval_W(0.0)), 1e-10);
  k.le("W(2)", std::abs(eval_W(2.0)), 1e-10);
  for (double c : {4.0, -2.0}) {
    const auto r = integrate_circle([](cplx s) { return eval_W(s); }, c, 0.1);
    k.le("|residue of W at " + fmt(c) + "| - 4", std::abs(std::abs(r.value) - 4.0), 1e-6);
  }
  double worst = 0;
  for (double v : {50.0, 200.0, 3000.0, 1e4})
    for (double c : {0.1, 1.0, 1.9}) worst = std::max(worst, asymptote_check({c, v}) * std::abs(cplx(c, v)));
  k.le("max |s| * asymptote residual, |Im s| >= 50", worst, 5.0);
  // Doubling the truncation height moves the value by at most twice the reported tail.
  ContourSpec sp = cfg.contour;
  auto f = [c = sp.abscissa](cplx s) { return 1.0 / (1.0 + (s - c) * std::conj(s - c)); };
  const TailModel tm{TailModel::Kind::power, 2.0, 0.0};
  const auto a = integrate_vertical(f, sp, tm);
  sp.half_height *= 2;
  const auto b = integrate_vertical(f, sp, tm);
  k.le("vertical truncation doubling / (2 tail)", std::abs(b.value - a.value) / (2 * a.truncation_tail), 1.0);
}

void mellin_identity(Sink& k) {
  for (cplx s : {cplx(0.5), cplx(1.0), cplx(1.5), cplx(2.0), cplx(0.5, 3.0)})
    k.le("|W(s) + s M[H](s)| at s=" + fmt(s), check_W_mellin(s), 1e-7);
}

void b_function(Sink& k) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(1.0, 2.0), im(-30.0, 30.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx b = eval_B_strip(s);
    worst = std::max(worst, std::abs(b + eval_W(s - 1.0) * eval_B_strip(s - 1.0)) / std::abs(b));
  }
  k.le("B functional equation, max relative residual over 100 strip points", worst, 1e-8);
  const double b25 = std::abs(eval_B(2.5));
  k.le("|B(3)|/|B(2.5)|", std::abs(eval_B(3.0)) / b25, 1e-6);
  k.le("|B(4)|/|B(2.5)|", std::abs(eval_B(4.0)) / b25, 1e-6);
  double lo = 1e300, hi = 0;
  for (int i = 0; i <= 20; ++i) {
    const double v = 5.0 * std::pow(100.0, i / 20.0);
    const double m = std::abs(eval_B(cplx(1.0, v)));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  k.ge("min |B(1+iv)|, v in [5,500]", lo, 0.2);
  k.le("max |B(1+iv)|, v in [5,500]", hi, 5.0);
  k.le("||B(1+500i)| - 1|", std::abs(std::abs(eval_B(cplx(1.0, 500.0))) - 1.0), 0.1);
}

void u_function(Sink& k) {
  const double t1 = 1e-3, t2 = 1e-4;
  for (cplx s : {cplx(1.5, 0), cplx(1.0, 2.0)}) {
    const cplx u1 = eval_U_auto(t1, s).value, u2 = eval_U_auto(t2, s).value;
    const cplx u0 = u2 - t2 * (u1 - u2) / (t1 - t2);
    k.le("|U(0+,s) - 1/sqrt(2 pi)| at s=" + fmt(s), std::abs(u0 - 1.0 / kSqrt2Pi), 1e-6);
  }
  const std::vector<std::pair<double, cplx>> pts{{0.5, cplx(1.5, 0)},  {2.0, cplx(1.2, 5.0)}, {1.0, cplx(1.3, 0)},
                                                 {0.3, cplx(1.8, -2)}, {1.5, cplx(1.1, 1.0)}, {0.8, cplx(1.6, 10)}};
  for (const auto& [t, s] : pts) k.le("U shift-equation residual at t=" + fmt(t) + ", s=" + fmt(s), check_U_ode(t, s, 1e-4), 1e-6);
  const double C = frozen_constant("C_T_U");
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const double t = 0.1 + 0.1 * i;
    for (int j = 0; j < 10; ++j) {
      const cplx s(1.0, std::round(5 * std::pow(40.0, j / 9.0) / 0.05) * 0.05);
      worst = std::max(worst, std::abs(eval_U(t, s).value) / U_envelope(t, s));
    }
  }
  k.le("max |U| e^{2t log|bs|} on the 10x10 grid", worst, C);
}

void v_function(Sink& k) {
  const std::vector<std::pair<cplx, cplx>> pts{
      {1.0, 1.5}, {cplx(2, 3), 1.2}, {cplx(0.1, -5), cplx(1.7, 3)}, {cplx(0.5, 0.5), cplx(1.4, -1)}, {4.0, cplx(1.9, 0.5)}};
  for (const auto& [z, s] : pts) k.le("V functional residual at z=" + fmt(z) + ", s=" + fmt(s), V_functional_residual(z, s), 1e-7);
  for (auto [t, s] : {std::pair{1.0, cplx(1.2, 1.0)}, std::pair{0.5, cplx(1.5, 0.0)}})
    k.le("Bromwich d-independence at t=" + fmt(t) + ", s=" + fmt(s), std::abs(invert_V(t, s, 0.3) - invert_V(t, s, 0.7)), 1e-6);
}

void lambda_regimes(Sink& k) {
  for (double t : {0.52, 0.56, 0.59})
    for (double x : {0.5, 2.0, 5.0}) {
      const auto d = eval_lambda(LambdaQuery{t, x, Regime::direct});
      const auto l = eval_lambda(LambdaQuery{t, x, Regime::log_regularized});
      k.le("direct vs log-regularized / combined error at t=" + fmt(t) + ", x=" + fmt(x),
           std::abs(d.value - l.value) / (d.err + l.err), 1.0);
    }
  for (double t : {1.5, 2.0, 4.0})
    for (double th : {0.1, 1.0, 10.0})
      k.le("large-t decomposition residual at t=" + fmt(t) + ", theta=" + fmt(th),
           std::abs(eval_lambda(t, th * t) - (eval_Q1(th) / (t * t * t) + eval_Q2(t, th))), 1e-6);
  const double lim = Q1_limit_zero();
  k.le("Q1(1e-3) relative to its theta -> 0 limit", std::abs(eval_Q1(1e-3) / lim - 1), 0.01);
  k.le("|Q1(1e3)|/|Q1(1)|", std::abs(eval_Q1(1e3) / eval_Q1(1.0)), 1e-10);
  const auto& L = derived_constants();
  const double c2 = L.c2.real(), c3 = L.c3.real();
  k.le("Q2(2,1e-3) / (c2 t^-4) - 1", std::abs(eval_Q2(2.0, 1e-3) * 16 / (kSqrt2Pi * c2) - 1), 0.2);
  k.le("Q2(2,50) / (c3 t^-4 theta^-5) - 1",
       std::abs(eval_Q2(2.0, 50.0) / (kSqrt2Pi * c3 / 16 * std::pow(50.0, -5)) - 1), 0.2);
  k.le("int |Q2(2,theta)| dtheta * 2^4", Q2_abs_integral(2.0) * 16, frozen_constant("C_Q2"));
}

void small_time(Sink& k) {
  std::vector<double> sup;
  for (double t : {0.1, 0.05, 0.02}) {
    double m = 0;
    for (double Y : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
      const double X = std::log1p(std::exp(-1 / t) * Y);
      const double v = eval_lambda_logx(t, X, Regime::log_regularized).value;
      m = std::max(m, std::abs(std::pow(std::abs(X), 1 - 2 * t) * v / t - 1));
    }
    sup.push_back(m);
  }
  k.le("near-one scaling sup deviation at t=0.02", sup[2], 0.2);
  k.le("near-one deviation ratio across t=0.1,0.05,0.02", std::max(sup[1] / sup[0], sup[2] / sup[1]), 1.0);
  auto phi = [](double x) { return bump(x, 0.5, 1.5); };
  k.le("delta pairing |<Lambda(0.02),phi> - phi(1)| / phi(1)",
       std::abs(delta_pairing(0.02, phi, 0.5, 1.5) - phi(1.0)) / phi(1.0), 0.05);
}

void norm_bounds(Sink& k) {
  const double C = frozen_constant("C_L1");
  for (double t : {0.2, 0.5, 1.0, 2.0, 4.0, 8.0})
    k.le("||Lambda(" + fmt(t) + ")||_1 (1+t^2)", l1_norm_lambda(t) * (1 + t * t), C);
  const double CG = frozen_constant("C_G");
  for (auto [t, x] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{0.25, 2.0},
                      std::pair{0.5, 4.0}, std::pair{1.0, 16.0}})
    k.le("int |G(" + fmt(t) + "," + fmt(x) + ";y)| dy", G_abs_integral(t, x), CG);
}

void solvers(Sink& k) {
  const auto f0 = make_bump(0.5, 1.5);
  auto l1_gap = [](const RadialProfile& a, const RadialProfile& b) {
    RadialProfile d = a;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
    return l1_norm(d);
  };
  std::vector<double> gaps;
  for (int n : {512, 1024}) {
    const auto g = make_log_grid(1e-3, 1e3, n);
    RadialProfile p{g.nodes, {}, 0};
    for (double x : g.nodes) p.values.push_back(f0(x));
    const auto ref = solve_profile(0.3, g, f0);
    EvolveControls ctl;
    if (n == 512)
      k.le("L1 gap direct vs superposition / ||f0||_1, n=512, zero extension",
           l1_gap(evolve(p, 0.3, ctl).back().profile, ref) / f0.l1(), 0.02);
    ctl.tails.left = true;
    gaps.push_back(l1_gap(evolve(p, 0.3, ctl).back().profile, ref) / f0.l1());
  }
  k.le("L1 gap direct vs superposition / ||f0||_1, n=512, flat left tail", gaps[0], 0.02);
  k.le("L1 gap ratio n=1024 / n=512", gaps[1] / gaps[0], 0.5);
  const auto g = make_log_grid(1e-5, 1e3, 683);
  RadialProfile p{g.nodes, {}, 0};
  for (double x : g.nodes) p.values.push_back(f0(x));
  EvolveControls ctl;
  for (int i = 0; i <= 12; ++i) ctl.snapshots.push_back(0.3 * i / 12);
  EvolveStats st;
  const auto tr = evolve(p, 0.3, ctl, &st);
  k.le("boundary mass share on [1e-5,1e3]", st.boundary_fraction, 1e-6);
  for (double s : {1.5, 2.0, 2.5}) {
    double r = NAN;
    try {
      r = multiplier_check(tr, cplx(s, 0)).relative();
    } catch (const TruncationError&) {
    }
    k.le("multiplier-law relative residual at s=" + fmt(s), r, 0.01);
  }
}

}  // namespace

std::vector<Check> run_criterion(int c, const RunConfig& cfg) {
  Sink k{c, {}};
  switch (c) {
    case 1: special_functions(k, cfg); break;
    case 2: mellin_identity(k); break;
    case 3: b_function(k); break;
    case 4: u_function(k); break;
    case 5: v_function(k); break;
    case 6: lambda_regimes(k); break;
    case 7: small_time(k); break;
    case 8: norm_bounds(k); break;
    case 9: solvers(k); break;
    default: throw ConfigError("verify: no criterion " + std::to_string(c));
  }
  return k.out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"special", "bfunc", "ufunc", "lambda", "solver", "all"};
  return n;
}

std::vector<int> suite_criteria(const std::string& s) {
  if (s == "special") return {1, 2};
  if (s == "bfunc") return {3};
  if (s == "ufunc") return {4, 5};
  if (s == "lambda") return {6, 7, 8};
  if (s == "solver") return {9};
  if (s == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw ConfigError("verify: unknown suite " + s);
}

std::vector<Check> run_suite(const std::string& suite, const RunConfig& cfg) {
  std::vector<Check> all;
  for (int c : suite_criteria(suite)) {
    auto v = run_criterion(c, cfg);
    all.insert(all.end(), v.begin(), v.end());
  }
  return all;
}

std::string report_json(const std::vector<Check>& checks) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json o;
    o["name"] = c.name;
    o["measured"] = c.measured;
    o["bound"] = c.bound;
    o["pass"] = c.pass;
    a.push_back(o);
  }
  return a.dump(1) + "\n";
}

}  // namespace wavekin
