#include "wavekin/ufunc.hpp"

#include <algorithm>
#include <cmath>

#include "wavekin/bfunc.hpp"
#include "wavekin/contour.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/simd.hpp"

namespace wavekin {

namespace {

constexpr double kRel = 1e-13;

double default_beta(cplx s) { return s.real() + 0.5; }

void check_s(cplx s) {
  if (!(s.real() > 0.0 && s.real() < 2.0 - 1e-6)) throw DomainError("U: need Re s in (0, 2)");
}

// (1/2 pi i) \int t^{-w} Gamma(w) k(w) / B(sigma) dsigma with w = sigma - s.
template <class Kern>
QuadResult line_integral(double t, cplx s, double beta, Kern kern) {
  const double lt = std::log(t);
  auto f = [&](double v) {
    const cplx sig(beta, v);
    const cplx w = sig - s;
    return std::exp(-w * lt + log_gamma(w)) * kern(w) / eval_B(sig);
  };
  const double hw = 36.0;
  QuadResult q = integrate_gk(f, s.imag() - hw, s.imag() + hw, kRel, 1e-16, 20000, 1.0, {s.imag()});
  q.value /= 2 * kPi;
  q.error_estimate /= 2 * kPi;
  return q;
}

double check_beta(cplx s, double beta) {
  if (beta == 0.0) beta = default_beta(s);
  if (!(beta > s.real() && beta < 3.0)) throw DomainError("U: beta outside (Re s, 3)");
  return beta;
}

}  // namespace

SymbolSample eval_U(double t, cplx s, double beta) {
  check_s(s);
  if (t < 0) throw DomainError("U: t < 0");
  if (t == 0) return {0.0, s, 1.0 / kSqrt2Pi, 0.0};
  beta = check_beta(s, beta);
  const auto q = line_integral(t, s, beta, [](cplx) { return cplx(1.0); });
  const cplx b = eval_B(s) / kSqrt2Pi;
  return {t, s, b * q.value, std::abs(b) * q.error_estimate};
}

SymbolSample eval_U_small_t(double t, cplx s, double beta_p) {
  check_s(s);
  if (t < 0) throw DomainError("U: t < 0");
  if (t == 0) return {0.0, s, 1.0 / kSqrt2Pi, 0.0};
  const double a = s.real();
  if (beta_p == 0.0) beta_p = std::max(0.5 * a, a - 0.5);
  if (!(beta_p > 0.0 && beta_p < a)) throw DomainError("U: beta' outside (0, Re s)");
  if (std::abs(beta_p - (a - 1.0)) < 1e-3) throw DomainError("U: beta' on a Gamma pole");
  const cplx bs = eval_B(s);
  // Residues of Gamma(sigma - s) at sigma = s - m crossed by the shift.
  cplx res = 0.0, term = 1.0;
  for (int m = 0; a - m > beta_p; ++m) {
    if (m > 0) term *= -t / m;
    res += term * (m == 0 ? cplx(1.0) : bs / eval_B(s - static_cast<double>(m)));
  }
  const auto q = line_integral(t, s, beta_p, [](cplx) { return cplx(1.0); });
  const cplx b = bs / kSqrt2Pi;
  return {t, s, res / kSqrt2Pi + b * q.value, std::abs(b) * q.error_estimate};
}

SymbolSample eval_U_auto(double t, cplx s) { return t < 0.05 ? eval_U_small_t(t, s) : eval_U(t, s); }

cplx eval_dU_ds(double t, cplx s, double beta) {
  check_s(s);
  if (t == 0) return 0.0;
  beta = check_beta(s, beta);
  const double lt = std::log(t);
  const cplx j0 = line_integral(t, s, beta, [](cplx) { return cplx(1.0); }).value;
  const cplx j1 = line_integral(t, s, beta, [lt](cplx w) { return lt - digamma(w); }).value;
  const double r = std::min(0.05, 0.5 * distance_to_B_pole(s));
  const cplx bp = circle_coefficient([](cplx z) { return eval_B(z); }, s, r, 1, 64);
  return (bp * j0 + eval_B(s) * j1) / kSqrt2Pi;
}

cplx eval_dU_dt(double t, cplx s, double beta) {
  check_s(s);
  if (!(t > 0)) throw DomainError("dU/dt: need t > 0");
  beta = check_beta(s, beta);
  const auto q = line_integral(t, s, beta, [t](cplx w) { return -w / t; });
  return eval_B(s) / kSqrt2Pi * q.value;
}

namespace {
// Analytic in z off the cut (-inf, 0]. Trapezoid on a tabulated 1/B line; the
// nearest singularities (sigma = s, s + 1) sit at distance >= min(beta - Re s, 1 + Re s - beta).
cplx V_continued(cplx z, cplx s, double beta) {
  if (beta == 0.0) beta = s.real() + 0.5;
  if (!(beta > s.real() && beta < s.real() + 1.0 && beta < 3.0)) throw DomainError("V: beta outside (Re s, Re s + 1)");
  const double gap = std::min(beta - s.real(), 1.0 + s.real() - beta);
  const double h = std::min(0.05, gap / 8.0);
  const cplx L = std::log(z) - cplx(0, kPi);
  const double th = std::abs(L.imag());
  const double grow = std::abs((beta - s.real()) * std::log(std::abs(z))) + 40.0;
  const long j_lo = static_cast<long>(std::floor((s.imag() - grow / th) / h));
  const long j_hi = static_cast<long>(std::ceil((s.imag() + grow / (2 * kPi - th)) / h));
  const auto line = cached_B_line(beta, h, j_lo, j_hi, false);
  cplx acc = 0.0;
  for (long j = j_lo; j <= j_hi; ++j) {
    const cplx w = cplx(beta, j * h) - s;
    cplx g;
    if (w.imag() <= 0) {
      g = std::exp(w * L - line->log_at(j)) / (1.0 - std::exp(cplx(0, -2 * kPi) * w));
    } else {
      const cplx e = std::exp(cplx(0, 2 * kPi) * w);
      g = -std::exp(w * (L + cplx(0, 2 * kPi)) - line->log_at(j)) / (1.0 - e);
    }
    acc += g;
  }
  return eval_B(s) / (kSqrt2Pi * z) * cplx(0, h) * acc;
}
}  // namespace

cplx eval_V(cplx z, cplx s, double beta) {
  check_s(s);
  if (!(z.real() > 0)) throw DomainError("V: branch requires Re z > 0");
  return V_continued(z, s, beta);
}

double V_functional_residual(cplx z, cplx s) {
  return std::abs(z * eval_V(z, s) - eval_W(s - 1.0) * eval_V(z, s - 1.0) - 1.0 / kSqrt2Pi);
}

cplx invert_V(double t, cplx s, double d) {
  if (!(t > 0 && d > 0)) throw DomainError("invert_V: need t > 0, d > 0");
  const double phi = 2 * kPi / 3;
  const cplx eu = std::polar(1.0, phi), ed = std::conj(eu);
  const double R = 40.0 / (t * std::cos(kPi - phi)) + 2 * d;
  auto f = [&](double r) {
    const cplx zu = d + r * eu, zd = d + r * ed;
    return std::exp(zu * t) * V_continued(zu, s, 0.0) * eu - std::exp(zd * t) * V_continued(zd, s, 0.0) * ed;
  };
  const auto q = integrate_gk(f, 0.0, R, 1e-10, 1e-14, 4000, 2.0, {});
  return q.value / cplx(0, 2 * kPi);
}

double check_U_ode(double t, cplx s, double dt) {
  if (!(t > dt && dt > 0)) throw DomainError("check_U_ode: need t > dt > 0");
  const cplx d = (eval_U(t + dt, s).value - eval_U(t - dt, s).value) / (2 * dt);
  return std::abs(d - eval_W(s - 1.0) * eval_U(t, s - 1.0).value);
}

UTable make_U_table(double t, double c, double h, long j_lo, long j_hi, double beta_sigma, bool derivatives,
                    const std::function<cplx(cplx)>& sigma_weight) {
  if (!(t > 0 && h > 0 && j_hi >= j_lo)) throw DomainError("make_U_table: bad arguments");
  if (!(beta_sigma > c)) throw DomainError("make_U_table: need beta_sigma > c");
  const long L = static_cast<long>(std::ceil(26.0 / h));
  const auto Bc = cached_B_line(c, h, j_lo, j_hi, derivatives);
  const auto Bs = cached_B_line(beta_sigma, h, j_lo - L, j_hi + L, false);
  const std::size_t nr = static_cast<std::size_t>(j_hi - j_lo + 2 * L + 1);
  std::vector<cplx> R(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const long j = j_lo - L + static_cast<long>(i);
    R[i] = std::exp(-Bs->log_at(j));
    if (sigma_weight) R[i] *= sigma_weight(cplx(beta_sigma, static_cast<double>(j) * h));
  }
  const std::size_t taps = static_cast<std::size_t>(2 * L + 1);
  std::vector<cplx> G0(taps), G1, G2;
  if (derivatives) G1.resize(taps), G2.resize(taps);
  const double lt = std::log(t);
  for (std::size_t k = 0; k < taps; ++k) {
    const cplx w(beta_sigma - c, (static_cast<long>(k) - L) * h);
    G0[k] = std::exp(-w * lt + log_gamma(w));
    if (derivatives) {
      G1[k] = (lt - digamma(w)) * G0[k];
      G2[k] = -w / t * G0[k];
    }
  }
  const std::size_t n = static_cast<std::size_t>(j_hi - j_lo + 1);
  UTable T;
  T.t = t;
  T.c = c;
  T.h = h;
  T.beta_sigma = beta_sigma;
  T.j_lo = j_lo;
  T.j_hi = j_hi;
  T.U.resize(n);
  std::vector<cplx> c1, c2;
  if (derivatives) c1.resize(n), c2.resize(n), T.dUds.resize(n), T.dUdt.resize(n);
  const cplx* g[3] = {G0.data(), G1.data(), G2.data()};
  cplx* o[3] = {T.U.data(), c1.data(), c2.data()};
  simd::active().corr(R.data(), 1, g, derivatives ? 3 : 1, taps, o, n);
  const double f = h / (2 * kPi * kSqrt2Pi);
  for (std::size_t i = 0; i < n; ++i) {
    const long j = j_lo + static_cast<long>(i);
    const cplx b = Bc->B(j) * f;
    const cplx u = T.U[i];
    T.U[i] = b * u;
    if (derivatives) {
      T.dUds[i] = b * (c1[i] + Bc->dlog_at(j) * u);
      T.dUdt[i] = b * c2[i];
    }
  }
  return T;
}

}  // namespace wavekin
