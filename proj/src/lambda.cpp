#include "wavekin/lambda.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "wavekin/bfunc.hpp"
#include "wavekin/complexfn.hpp"
#include "wavekin/contour.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/kernels.hpp"
#include "wavekin/simd.hpp"
#include "wavekin/ufunc.hpp"

namespace wavekin {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::direct: return "direct";
    case Regime::log_regularized: return "log_regularized";
    case Regime::large_t_asymptotic: return "large_t_asymptotic";
    case Regime::small_t_series: return "small_t_series";
    case Regime::near_one_scaling: return "near_one_scaling";
    case Regime::automatic: return "auto";
  }
  return "auto";
}

Regime parse_regime(const std::string& name) {
  if (name == "automatic") return Regime::automatic;
  for (Regime r : {Regime::direct, Regime::log_regularized, Regime::large_t_asymptotic, Regime::small_t_series,
                   Regime::near_one_scaling, Regime::automatic})
    if (name == regime_name(r)) return r;
  throw ConfigError("unknown regime: " + name);
}

namespace {

constexpr double kH = 0.05;
enum Kind { kU = 0, kDs = 1, kDt = 2, kSU = 3 };

// Large-|Im s| model of U: e^{-z}(1 - kappa (z^2 - z)/2), z = -t W(s - 1/2), kappa = W'/W.
std::array<cplx, 3> model(double t, cplx s) {
  const cplx u = s - 0.5;
  const cplx w0 = eval_W(u), w1 = eval_W_prime(u), w2 = eval_W_second(u);
  const cplx z = -t * w0, zs = -t * w1, zt = -w0;
  const cplx kap = w1 / w0, kaps = w2 / w0 - kap * kap;
  const cplx q = z * z - z;
  const cplx P = 1.0 - 0.5 * kap * q;
  const cplx Ps = -0.5 * (kaps * q + kap * (2.0 * z - 1.0) * zs);
  const cplx Pt = -0.5 * kap * (2.0 * z - 1.0) * zt;
  const cplx e = std::exp(-z);
  return {e * P, e * (Ps - zs * P), e * (Pt - zt * P)};
}

cplx model_kind(int kind, double t, cplx s) {
  const auto m = model(t, s);
  return kind == kSU ? s * m[0] : m[static_cast<std::size_t>(kind)];
}

double cutoff(double t) {
  const double v = 2.0 * std::pow(1e14 * std::exp(-2 * kEulerGamma * t), 1.0 / (2 * t));
  return std::clamp(std::isfinite(v) ? v : 1e300, 40.0, 800.0);
}

struct InvTable {
  double t = 0, c = 0, V = 0;
  long J = 0;
  UTable T;
  std::vector<cplx> sU;
  std::array<double, 4> abs_sum{};
  std::array<double, 4> abs_max{};
  const std::vector<cplx>& data(int k) const {
    switch (k) {
      case kU: return T.U;
      case kDs: return T.dUds;
      case kDt: return T.dUdt;
      default: return sU;
    }
  }
};

std::shared_ptr<const InvTable> inv_table(double t, double c, double beta_sigma) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, double>, std::shared_ptr<const InvTable>> cache;
  std::lock_guard lk(mu);
  const auto key = std::make_tuple(t, c, beta_sigma);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() > 48) cache.clear();
  auto tab = std::make_shared<InvTable>();
  tab->t = t;
  tab->c = c;
  tab->J = std::lround(cutoff(t) / kH);
  tab->V = tab->J * kH;
  tab->T = make_U_table(t, c, kH, 0, tab->J, beta_sigma, true);
  tab->sU.resize(tab->T.U.size());
  for (std::size_t j = 0; j < tab->sU.size(); ++j) tab->sU[j] = cplx(c, static_cast<double>(j) * kH) * tab->T.U[j];
  for (int k = 0; k < 4; ++k) {
    double a = 0, m = 0;
    for (const cplx& v : tab->data(k)) {
      a += std::abs(v);
      m = std::max(m, std::abs(v));
    }
    tab->abs_sum[static_cast<std::size_t>(k)] = a * kH;
    tab->abs_max[static_cast<std::size_t>(k)] = m;
  }
  cache.emplace(key, tab);
  return tab;
}

double abscissa_for(double X) { return X < -3.0 ? 0.25 : (X > 3.0 ? 1.75 : 1.0); }

struct LineValue {
  double value = 0, err = 0;
};

// \int_R F(v) dv with F(v) = T_kind(c + iv) e^{-ivX}: trapezoid on [0, V], end corrections
// from the fitted model, and the model tail on a ray rotated into the decaying half-plane.
LineValue line_inversion(const InvTable& tab, int kind, double X) {
  const auto& f = tab.data(kind);
  const long J = tab.J;
  const double h = kH, V = tab.V, t = tab.t, c = tab.c;
  if (std::abs(X) * h > 2.5) throw DomainError("inverse Mellin: |log x| too large for the table spacing");
  const cplx S = simd::active().phase_sum(f.data(), static_cast<std::size_t>(J + 1), h * X);
  const cplx eV = std::polar(1.0, -V * X);
  const cplx fJ = f[static_cast<std::size_t>(J)];
  const cplx trap = h * (S - 0.5 * f[0] - 0.5 * fJ * eV);

  auto mk = [&](cplx v) { return model_kind(kind, t, cplx(c, 0) + cplx(0, 1) * v); };
  const cplx A = fJ / mk(V);
  auto g = [&](cplx v) { return A * mk(v); };
  const double d = 0.5;
  const cplx gp1 = g(V + d), gm1 = g(V - d), gp2 = g(V + 2 * d), gm2 = g(V - 2 * d);
  const cplx g1 = (gp1 - gm1) / (2 * d), g2 = (gp1 - 2.0 * fJ + gm1) / (d * d);
  const cplx g3 = (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2 * d * d * d);
  const cplx iX(0, X);
  const cplx F1 = (g1 - iX * fJ) * eV;
  const cplx F3 = (g3 - 3.0 * iX * g2 - 3.0 * X * X * g1 + iX * X * X * fJ) * eV;
  const cplx em = -h * h / 12.0 * F1 + std::pow(h, 4) / 720.0 * F3;

  const double psi = X > 0 ? -kPi / 4 : (X < 0 ? kPi / 4 : 0.0);
  const cplx dir = std::polar(1.0, psi);
  double ymax;
  if (X != 0.0) {
    ymax = std::min(600.0, std::log1p(75.0 / (std::abs(X) * V)) + 1.5);
  } else {
    const double p = kind == kDs ? 2 * t + 1 : (kind == kSU ? 2 * t - 1 : 2 * t);
    if (p <= 1.05) throw RegimeError("inverse Mellin at x = 1 does not converge for this t");
    ymax = std::min(600.0, 45.0 / (p - 1.0));
  }
  auto G = [&](double y) {
    const cplx v = V + V * std::expm1(y) * dir;
    return g(v) * std::exp(cplx(0, -1) * v * X) * dir * (V * std::exp(y));
  };
  const QuadResult tail = integrate_gk(G, 0.0, ymax, 1e-11, 1e-300, 4000, 0.5, {});

  const long jm = J - 100;
  const cplx fm = f[static_cast<std::size_t>(jm)];
  const double rel = std::abs(fm - g(jm * h)) / std::max(std::abs(fm), 1e-300);
  const bool resolved = std::abs(fm) > 1e-10 * tab.abs_max[static_cast<std::size_t>(kind)];
  if (resolved && rel > 0.05) throw TailModelError("tail model mismatch above 5%");
  LineValue r;
  r.value = 2.0 * (trap + em + tail.value).real();
  r.err = 2.0 * (rel * std::abs(tail.value) + tail.error_estimate + 0.01 * std::abs(em)) +
          1e-15 * tab.abs_sum[static_cast<std::size_t>(kind)];
  return r;
}

double near_one_amplitude(double t) {
  return std::pow(4.0, t) * std::exp(-2 * kEulerGamma * t) * std::exp(log_gamma(cplx(1 - 2 * t, 0)).real()) *
         std::sin(kPi * t) / (kPi * t);
}

// Integral over X in [a, b] with a |X|^{2t-1} singularity at X = 0 removed by X = s xi^{1/(2t)}.
double integrate_X(const std::function<double(double)>& f, double a, double b, double t, double rel) {
  auto plain = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    return integrate_gk([&](double X) { return cplx(f(X)); }, lo, hi, rel, 1e-300, 4000, 0.5, {}).value.real();
  };
  if (!(a < 0 && b > 0) || t >= 0.5) {
    if (a < 0 && b > 0)
      return integrate_gk([&](double X) { return cplx(f(X)); }, a, b, rel, 1e-300, 4000, 0.5, {0.0}).value.real();
    return plain(a, b);
  }
  const double q = 1.0 / (2 * t);
  auto mapped = [&](double side, double w) {
    auto g = [&](double xi) {
      if (xi <= 0) return cplx(0.0);
      return cplx(f(side * w * std::pow(xi, q)) * w * q * std::pow(xi, q - 1));
    };
    return integrate_gk(g, 0.0, 1.0, rel, 1e-300, 4000, 0.5, {}).value.real();
  };
  const double wl = std::min(1.0, -a), wr = std::min(1.0, b);
  return plain(a, -wl) + mapped(-1.0, wl) + mapped(1.0, wr) + plain(wr, b);
}

}  // namespace

Regime resolve_regime(double t, double X) {
  if (t > 0.55) return Regime::direct;
  if (std::abs(std::expm1(X)) >= std::exp(-1.0 / t)) return Regime::log_regularized;
  if (t > 0.5) return Regime::direct;
  if (t == 0.5) return Regime::log_regularized;
  return Regime::near_one_scaling;
}

LambdaValue eval_lambda_logx(double t, double X, Regime regime) {
  if (!(t > 0) || !std::isfinite(X)) throw DomainError("Lambda: need t > 0 and finite log x");
  if (regime == Regime::automatic && X == 0.0 && t <= 0.5)
    throw DomainError("Lambda is unbounded at x = 1 for t <= 1/2");
  const Regime r = regime == Regime::automatic ? resolve_regime(t, X) : regime;
  LambdaValue out;
  out.regime = r;
  switch (r) {
    case Regime::direct:
    case Regime::log_regularized: {
      if (r == Regime::direct && t <= 0.5) throw RegimeError("direct inversion needs t > 1/2");
      if (r == Regime::log_regularized && X == 0.0) throw RegimeError("log-regularized inversion needs x != 1");
      const double c = abscissa_for(X);
      const auto tab = inv_table(t, c, c + 0.5);
      const auto lv = line_inversion(*tab, r == Regime::direct ? kU : kDs, X);
      double f = kSqrt2Pi * std::exp(-c * X) / (2 * kPi);
      if (r == Regime::log_regularized) f /= X;
      out.value = f * lv.value;
      out.err = std::abs(f) * lv.err;
      return out;
    }
    case Regime::large_t_asymptotic: {
      if (t <= 1.0) throw RegimeError("large-t decomposition needs t > 1");
      const double theta = std::exp(X) / t;
      out.value = eval_Q1(theta) / (t * t * t) + eval_Q2(t, theta);
      out.err = 1e-12 * std::abs(out.value);
      return out;
    }
    case Regime::small_t_series:
      out.value = eval_lambda_series(t, std::exp(X), 6);
      out.err = std::abs(out.value) * std::pow(t, 6);
      return out;
    case Regime::near_one_scaling: {
      if (t >= 0.5) throw RegimeError("near-one scaling needs t < 1/2");
      out.value = t * std::pow(std::abs(X), 2 * t - 1);
      out.err = std::abs(out.value) * std::abs(near_one_amplitude(t) - 1.0);
      return out;
    }
    case Regime::automatic: break;
  }
  throw RegimeError("unresolved regime");
}

LambdaValue eval_lambda(const LambdaQuery& q) {
  if (!(q.x > 0)) throw DomainError("Lambda: need x > 0");
  return eval_lambda_logx(q.t, std::log(q.x), q.regime);
}

double eval_lambda(double t, double x) { return eval_lambda(LambdaQuery{t, x, Regime::automatic}).value; }

// ------------------------------------------------------------------ profiles Q1, Q2

double Q1_limit_zero() {
  const auto& L = derived_constants();
  return (-2.0 * L.c1 * L.B1 / L.Wp0).real();
}

double eval_Q1(double theta) {
  if (!(theta > 0)) throw DomainError("Q1: theta > 0");
  static const std::vector<cplx> g = [] {
    const long J = 900;
    const auto line = cached_B_line(1.0, kH, 0, J, false);
    std::vector<cplx> v(static_cast<std::size_t>(J + 1));
    for (long j = 0; j <= J; ++j)
      v[static_cast<std::size_t>(j)] = line->B(j) * std::exp(log_gamma(cplx(2.0, -j * kH)));
    v[0] *= 0.5;
    v.back() *= 0.5;
    return v;
  }();
  const double lt = std::log(theta);
  if (std::abs(lt) * kH > 2.5) throw DomainError("Q1: theta out of range");
  const cplx S = simd::active().phase_sum(g.data(), g.size(), kH * lt);
  return derived_constants().c1.real() / theta * kH * 2.0 * S.real() / (2 * kPi);
}

double eval_Q2(double t, double theta) {
  if (!(t > 1.0 && theta > 0)) throw DomainError("Q2: need t > 1, theta > 0");
  const double X = std::log(theta * t);
  const double c = abscissa_for(X);
  const auto tab = inv_table(t, c, 3.5);
  const auto lv = line_inversion(*tab, kU, X);
  return kSqrt2Pi * std::exp(-c * X) / (2 * kPi) * lv.value;
}

// ------------------------------------------------------------------ small-t series

namespace {

// Laurent coefficients a_{-1}, a_{-2}, a_{-3} of prod_{i=1..k} W(s - i) at s = p.
std::array<cplx, 3> laurent(int k, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::array<cplx, 3>> cache;
  std::lock_guard lk(mu);
  const auto key = std::make_pair(k, p);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto f = [k](cplx s) {
    cplx v = 1.0;
    for (int i = 1; i <= k; ++i) v *= eval_W(s - static_cast<double>(i));
    return v;
  };
  std::array<cplx, 3> a;
  for (int m = 1; m <= 3; ++m) a[static_cast<std::size_t>(m - 1)] = circle_coefficient(f, cplx(p, 0), 0.4, -m, 64);
  cache.emplace(key, a);
  return a;
}

}  // namespace

double series_coefficient(int k, double x) {
  if (!(x > 1.05)) throw DomainError("series coefficients need x > 1.05");
  const double L = std::log(x);
  double sum = 0;
  for (int p = 2; p <= 600; ++p) {
    const auto a = laurent(k, p);
    const double term = (std::pow(x, -p) * (a[0] - a[1] * L + a[2] * (0.5 * L * L))).real();
    sum -= term;
    const double bound = std::pow(x, -p) * std::pow(2 * std::log(p) + 4, k) * (1 + L * L);
    if (p > 12 && bound < 1e-17 * std::max(std::abs(sum), 1e-300)) break;
  }
  return sum;
}

double eval_lambda_series(double t, double x, int n_terms) {
  if (!(t > 0 && t < 1)) throw DomainError("series needs 0 < t < 1");
  if (!(x / t > 1) || !(x > 1.05)) throw DomainError("series needs x > 1.05 (expansion about the diagonal)");
  if (n_terms < 1 || n_terms > 6) throw DomainError("series supports 1..6 terms");
  double sum = 0, prev = 0, prev2 = 0, fact = 1;
  for (int k = 1; k <= n_terms; ++k) {
    fact *= k;
    const double term = std::pow(t, k) / fact * series_coefficient(k, x);
    if (k >= 3 && std::abs(term) > std::max(std::abs(prev), std::abs(prev2)) &&
        std::abs(term) > 1e-14 * std::abs(sum))
      throw RegimeError("small-t series terms stopped decreasing");
    sum += term;
    prev2 = prev;
    prev = term;
  }
  return sum;
}

double eval_mu_series(double t, int n_max) {
  static std::mutex mu;
  static std::vector<double> rho;
  double s = 0;
  for (int n = 6; n <= n_max; ++n) {
    double r;
    {
      std::lock_guard lk(mu);
      while (static_cast<int>(rho.size()) <= n - 6) rho.push_back(residue_inv_B(-6.0 - rho.size()).real());
      r = rho[static_cast<std::size_t>(n - 6)];
    }
    s += r * std::pow(t, n);
  }
  return s;
}

namespace {
cplx log_B_any(cplx w) {
  const double a = w.real();
  if (a >= 0.25 && a <= 1.75) return log_B_strip(w);
  if (a < 0.25) throw DomainError("log_B_any: Re w < 1/4");
  const int k = static_cast<int>(std::ceil(a - 1.75));
  cplx l = log_B_strip(w - static_cast<double>(k));
  for (int i = 1; i <= k; ++i) l += log_neg_W(w - static_cast<double>(i));
  return l;
}
}  // namespace

double eval_mu(double t) {
  if (!(t > 0 && t < 1)) throw DomainError("mu needs 0 < t < 1");
  if (t < 0.08) throw DomainError("mu: contour evaluation needs t >= 0.08");
  const double lt = std::log(t);
  const double V = std::max(40.0, 3.0 * std::exp(0.5 / t));
  const long J = std::lround(V / kH);
  const double Vr = J * kH;
  const auto line = cached_B_line(1.0, kH, 0, J, true);
  std::vector<cplx> F(static_cast<std::size_t>(J + 1));
  for (long j = 0; j <= J; ++j)
    F[static_cast<std::size_t>(j)] = std::exp(-cplx(1.0, j * kH) * lt - line->log_at(j));
  cplx acc = 0;
  for (const cplx& v : F) acc += v;
  const cplx trap = kH * (acc - 0.5 * F.front() - 0.5 * F.back());
  auto dF = [&](long j) { return F[static_cast<std::size_t>(j)] * cplx(0, -1) * (lt + line->dlog_at(j)); };
  const cplx F1 = dF(J);
  const cplx F3 = (dF(J) - 2.0 * dF(J - 1) + dF(J - 2)) / (kH * kH);
  const cplx em = -kH * kH / 12.0 * F1 + std::pow(kH, 4) / 720.0 * F3;
  const cplx dir = std::polar(1.0, -kPi / 4);
  auto G = [&](double r) {
    const cplx v = Vr + r * dir;
    const cplx w = cplx(1.0, 0) + cplx(0, 1) * v;
    return std::exp(-w * lt - log_B_any(w)) * dir;
  };
  cplx ray = 0;
  for (int chunk = 0; chunk < 200; ++chunk) {
    const cplx part = integrate_gk(G, 20.0 * chunk, 20.0 * (chunk + 1), 1e-10, 1e-300, 400, 5.0, {}).value;
    ray += part;
    if (chunk > 2 && std::abs(part) < 1e-15 * std::abs(trap + ray)) break;
  }
  return 2.0 * (trap + em + ray).real() / (2 * kPi);
}

// ------------------------------------------------------------------ derivatives

double eval_dlambda_dt(double t, double x) {
  if (!(t > 0 && x > 0)) throw DomainError("dLambda/dt: t, x > 0");
  const double X = std::log(x);
  if (t <= 0.5 && X == 0.0) throw RegimeError("dLambda/dt at x = 1 needs t > 1/2");
  const double c = abscissa_for(X);
  const auto tab = inv_table(t, c, c + 0.5);
  return kSqrt2Pi * std::exp(-c * X) / (2 * kPi) * line_inversion(*tab, kDt, X).value;
}

double eval_dlambda_dx(double t, double x) {
  if (!(t > 1.0)) throw RegimeError("dLambda/dx needs t > 1");
  if (!(x > 0)) throw DomainError("dLambda/dx: x > 0");
  const double X = std::log(x);
  const double c = abscissa_for(X);
  const auto tab = inv_table(t, c, c + 0.5);
  return -kSqrt2Pi * std::exp(-c * X) / (2 * kPi * x) * line_inversion(*tab, kSU, X).value;
}

// ------------------------------------------------------------------ Green kernel and norms

double eval_G(double t, double x, double y) {
  if (!(t > 0 && x > 0 && y > 0)) throw DomainError("G: t, x, y > 0");
  return eval_lambda(t / y, x / y) / y;
}

double G_abs_integral(double t, double x) {
  if (!(t > 0 && x > 0)) throw DomainError("G integral: t, x > 0");
  // y = t/tau: \int |Lambda(tau, theta tau)| d(log tau), theta = x/t.
  const double lth = std::log(x / t);
  const double us = -lth;  // tau* where theta tau = 1
  const double ts = std::exp(us);
  const double a = std::log(1e-6), b = std::log(80.0);
  const double lo = std::min(a, us - 1.0), hi = std::max(b, us + 1.0);
  // d = log(theta tau): the singular point sits at d = 0.
  auto g = [&](double d) { return std::abs(eval_lambda_logx(std::exp(us + d), d).value); };
  return integrate_X(g, lo - us, hi - us, ts, 1e-6);
}

double l1_norm_lambda(double t) {
  if (!(t > 0)) throw DomainError("l1 norm: t > 0");
  auto f = [&](double X) { return std::abs(eval_lambda_logx(t, X).value) * std::exp(X); };
  return integrate_X(f, -40.0, 12.0, t, 1e-7);
}

double Q2_abs_integral(double t) {
  auto f = [&](double l) {
    const double th = std::exp(l);
    return std::abs(eval_Q2(t, th)) * th;
  };
  return integrate_gk([&](double l) { return cplx(f(l)); }, -20.0, 12.0, 1e-7, 1e-300, 4000, 0.5, {}).value.real();
}

double bump(double x, double lo, double hi) {
  if (!(x > lo && x < hi)) return 0.0;
  const double u = (2 * x - lo - hi) / (hi - lo);
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double delta_pairing(double t, const TestFn& phi, double lo, double hi) {
  if (!(lo > 0 && hi > lo)) throw DomainError("test function support must lie in (0, inf)");
  if (t == 0.0) return phi(1.0);
  if (!(t > 0)) throw DomainError("delta pairing: t >= 0");
  auto f = [&](double X) {
    const double x = std::exp(X);
    const double p = phi(x);
    if (p == 0.0) return 0.0;
    return eval_lambda_logx(t, X).value * p * x;
  };
  return integrate_X(f, std::log(lo), std::log(hi), t, 1e-8);
}

double adjoint_generator(const TestFn& phi, double lo, double hi, double y) {
  const double L = 20.0;
  const double py = phi(y);
  std::vector<double> br{0.0};
  for (double e : {std::log(y / lo), std::log(y / hi)})
    if (std::abs(e) < L) br.push_back(e);
  auto f = [&](double eta) {
    if (eta == 0.0) return cplx(0.0);
    return cplx(kernel_k(eta) * (phi(y * std::exp(-eta)) - py));
  };
  double v = integrate_gk(f, -L, L, 1e-10, 1e-13, 4000, 0.5, br).value.real();
  v -= py * (kernel_tail_above(L) + kernel_tail_below(-L));
  return 2.0 / y * v;
}

WeakResidual weak_equation_residual(double t1, double t2, double lo, double hi) {
  if (!(t2 > t1 && t1 > 0.5)) throw DomainError("weak residual: need 1/2 < t1 < t2");
  auto b = [&](double x) { return bump(x, lo, hi); };
  // Composite Gauss-Legendre in X: edges at 0 and the support ends, graded towards 0.
  std::vector<double> edges{0.0, std::log(lo), std::log(hi)};
  for (double e = -20.0; e <= 20.0; e += 0.5) edges.push_back(e);
  for (double e = -3.0; e <= 3.0; e += 0.1) edges.push_back(e);
  for (double e = 0.05; e > 1e-4; e *= 0.5) {
    edges.push_back(e);
    edges.push_back(-e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(), [](double u, double v) { return std::abs(u - v) < 1e-9; }),
              edges.end());
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  std::vector<double> X, Wt, Lb, B;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], c = edges[i + 1];
    for (std::size_t k = 0; k < gx.size(); ++k) {
      const double xx = 0.5 * (a + c) + 0.5 * (c - a) * gx[k];
      X.push_back(xx);
      Wt.push_back(0.5 * (c - a) * gw[k] * std::exp(xx));
      Lb.push_back(adjoint_generator(b, lo, hi, std::exp(xx)));
      B.push_back(b(std::exp(xx)));
    }
  }
  std::vector<double> tx, tw;
  gauss_legendre(48, tx, tw);
  WeakResidual out;
  for (std::size_t m = 0; m < tx.size(); ++m) {
    const double t = 0.5 * (t1 + t2) + 0.5 * (t2 - t1) * tx[m];
    const double wt = 0.5 * (t2 - t1) * tw[m];
    const double u = (2 * t - t1 - t2) / (t2 - t1);
    const double a = std::exp(1.0 - 1.0 / (1.0 - u * u));
    const double ap = a * (-2 * u / ((1 - u * u) * (1 - u * u))) * 2.0 / (t2 - t1);
    double pb = 0, pl = 0, sb = 0, sl = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const double lam = eval_lambda_logx(t, X[i]).value;
      pb += Wt[i] * lam * B[i];
      pl += Wt[i] * lam * Lb[i];
      sb += Wt[i] * std::abs(lam * B[i]);
      sl += Wt[i] * std::abs(lam * Lb[i]);
    }
    out.residual += wt * (ap * pb + a * pl);
    out.scale += wt * (std::abs(ap) * sb + a * sl);
  }
  return out;
}

std::vector<LambdaValue> lambda_profile(double t, const std::vector<double>& x, Regime regime) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("profile grid must be strictly increasing");
  std::vector<LambdaValue> out;
  out.reserve(x.size());
  for (double xi : x) out.push_back(eval_lambda(LambdaQuery{t, xi, regime}));
  return out;
}

}  // namespace wavekin
