#include "wavekin/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>

#include "wavekin/contour.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/lambda.hpp"
#include "wavekin/simd.hpp"
#include "wavekin/ufunc.hpp"

namespace wavekin {

namespace {

constexpr double kH = 0.05;
constexpr double kVmax = 4000.0;

double smooth_step(double z) {
  if (z <= 0) return 0.0;
  if (z >= 1) return 1.0;
  const double p = std::exp(-1.0 / z), q = std::exp(-1.0 / (1.0 - z));
  return p / (p + q);
}

// Samples of f0(e^Y) e^{beta Y} on a uniform log grid, for Fourier sums along Re sigma = beta.
struct LogSamples {
  double Y0 = 0, dY = 0, beta = 0;
  std::vector<cplx> g;
};

LogSamples log_samples(const InitialDatum& f0, double beta) {
  LogSamples s;
  s.beta = beta;
  const double Ya = std::log(f0.a), Yb = std::log(f0.b);
  const double want = (Yb - Ya) / (kPi / (4 * kVmax));
  const int n = std::clamp(static_cast<int>(std::ceil(want)), 1024, 1 << 16);
  s.Y0 = Ya;
  s.dY = (Yb - Ya) / n;
  s.g.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    const double Y = Ya + k * s.dY;
    s.g[static_cast<std::size_t>(k)] = f0(std::exp(Y)) * std::exp(beta * Y);
  }
  return s;
}

cplx sample_transform(const LogSamples& s, double v) {
  const cplx sum = simd::active().phase_sum(s.g.data(), s.g.size(), -v * s.dY);
  return s.dY * std::polar(1.0, v * s.Y0) * sum;
}

// Coefficients for the exact transform of a piecewise linear interpolant:
// F(sigma) = (sum_k alpha_k y_k^sigma)/sigma + (sum_k gamma_k y_k^sigma)/(sigma+1).
struct LinearPieces {
  std::vector<double> logy, alpha, gamma;
};

LinearPieces linear_pieces(const InitialDatum& f0) {
  const std::size_t n = f0.y.size();
  LinearPieces p;
  p.logy.resize(n);
  p.alpha.assign(n, 0.0);
  p.gamma.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) p.logy[k] = std::log(f0.y[k]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double m = (f0.f[i + 1] - f0.f[i]) / (f0.y[i + 1] - f0.y[i]);
    const double A = f0.f[i] - m * f0.y[i];
    p.alpha[i] -= A;
    p.alpha[i + 1] += A;
    p.gamma[i] -= m * f0.y[i];
    p.gamma[i + 1] += m * f0.y[i + 1];
  }
  return p;
}

cplx pieces_transform(const LinearPieces& p, cplx sigma) {
  cplx a = 0, g = 0;
  for (std::size_t k = 0; k < p.logy.size(); ++k) {
    const cplx P = std::exp(sigma * p.logy[k]);
    a += p.alpha[k] * P;
    g += p.gamma[k] * P;
  }
  return a / sigma + g / (sigma + 1.0);
}

// F0 on sigma = beta + i j h for j in [j_lo, j_hi].
std::vector<cplx> transform_line(const InitialDatum& f0, double beta, long j_lo, long j_hi) {
  std::vector<cplx> out(static_cast<std::size_t>(j_hi - j_lo + 1));
  if (f0.kind == InitialDatum::Kind::sampled) {
    const auto p = linear_pieces(f0);
    const std::size_t n = p.logy.size();
    std::vector<cplx> P(n), z(n);
    for (long j = j_lo; j <= j_hi; ++j) {
      const cplx sigma(beta, static_cast<double>(j) * kH);
      if ((j - j_lo) % 256 == 0) {
        for (std::size_t k = 0; k < n; ++k) {
          P[k] = std::exp(sigma * p.logy[k]);
          z[k] = std::polar(1.0, kH * p.logy[k]);
        }
      }
      cplx a = 0, g = 0;
      for (std::size_t k = 0; k < n; ++k) {
        a += p.alpha[k] * P[k];
        g += p.gamma[k] * P[k];
        P[k] *= z[k];
      }
      out[static_cast<std::size_t>(j - j_lo)] = a / sigma + g / (sigma + 1.0);
    }
    return out;
  }
  const auto s = log_samples(f0, beta);
  for (long j = j_lo; j <= j_hi; ++j) out[static_cast<std::size_t>(j - j_lo)] = sample_transform(s, j * kH);
  return out;
}

double abscissa_for(double X) { return X < -3.0 ? 0.25 : (X > 3.0 ? 1.75 : 1.0); }

// Truncation height: where |F0| stays below 1e-16 of its peak, or where U has decayed.
double cutoff(const InitialDatum& f0, double t, double beta) {
  const double vu = std::max(40.0, 2.0 * std::pow(1e16, 1.0 / (2 * t)));
  double vf = kVmax;
  if (f0.kind != InitialDatum::Kind::sampled) {
    const auto s = log_samples(f0, beta);
    const double peak = std::abs(sample_transform(s, 0.0));
    int quiet = 0;
    for (double v = 25; v <= kVmax; v += 25) {
      if (std::abs(sample_transform(s, v)) <= 1e-16 * peak) {
        if (++quiet == 3) {
          vf = v;
          break;
        }
      } else {
        quiet = 0;
      }
    }
  }
  return std::min(vu, vf);
}

struct MellinTable {
  double t = 0, c = 0;
  long J = 0;
  std::vector<cplx> M, dMdt;
  double abs_sum = 0, dt_abs_sum = 0, end_mag = 0, dt_end_mag = 0;
};

bool same_datum(const InitialDatum& p, const InitialDatum& q) {
  return p.kind == q.kind && p.a == q.a && p.b == q.b && p.amplitude == q.amplitude && p.edge == q.edge &&
         p.y == q.y && p.f == q.f;
}

std::shared_ptr<const MellinTable> mellin_table(double t, double c, const InitialDatum& f0) {
  static std::mutex mu;
  static std::deque<std::pair<InitialDatum, std::shared_ptr<const MellinTable>>> cache;
  std::lock_guard lk(mu);
  for (const auto& [d, tab] : cache)
    if (tab->t == t && tab->c == c && same_datum(d, f0)) return tab;

  const double beta = c + 0.5;
  auto tab = std::make_shared<MellinTable>();
  tab->t = t;
  tab->c = c;
  tab->J = static_cast<long>(std::ceil(cutoff(f0, t, beta) / kH));
  const long L = static_cast<long>(std::ceil(26.0 / kH));
  const auto F = transform_line(f0, beta, -L, tab->J + L);
  auto weight = [&](cplx sigma) {
    const long j = std::lround(sigma.imag() / kH);
    return F[static_cast<std::size_t>(j + L)];
  };
  const UTable T = make_U_table(t, c, kH, 0, tab->J, beta, true, weight);
  tab->M.resize(T.size());
  tab->dMdt.resize(T.size());
  for (std::size_t j = 0; j < T.size(); ++j) {
    tab->M[j] = kSqrt2Pi * T.U[j];
    tab->dMdt[j] = kSqrt2Pi * T.dUdt[j];
    tab->abs_sum += std::abs(tab->M[j]) * kH;
    tab->dt_abs_sum += std::abs(tab->dMdt[j]) * kH;
  }
  const std::size_t tail = std::min<std::size_t>(20, T.size());
  for (std::size_t j = T.size() - tail; j < T.size(); ++j) {
    tab->end_mag = std::max(tab->end_mag, std::abs(tab->M[j]));
    tab->dt_end_mag = std::max(tab->dt_end_mag, std::abs(tab->dMdt[j]));
  }
  if (cache.size() >= 6) cache.pop_front();
  cache.emplace_back(f0, tab);
  return tab;
}

// (1/2pi) \int M(c+iv) x^{-c-iv} dv by trapezoid on [0, V] using conjugate symmetry.
PointValue invert(const std::vector<cplx>& m, double abs_sum, double end_mag, double c, double X) {
  const cplx S = simd::active().phase_sum(m.data(), m.size(), kH * X);
  const double v = kH * (S - 0.5 * m[0]).real() / kPi;
  const double f = std::exp(-c * X);
  PointValue r;
  r.value = f * v;
  r.err = f * (end_mag * 20 * kH + 1e-15 * abs_sum) / kPi;
  return r;
}

void check_t(double t) {
  if (!(t > 0) || !std::isfinite(t)) throw DomainError("Cauchy solve: need t > 0");
}

}  // namespace

// ------------------------------------------------------------------ initial data

double InitialDatum::operator()(double yy) const {
  if (!(yy > a && yy < b)) return 0.0;
  switch (kind) {
    case Kind::analytic_bump: return amplitude * bump(yy, a, b);
    case Kind::indicator_smoothed: {
      const double s = std::min(smooth_step((yy - a) / edge), smooth_step((b - yy) / edge));
      return amplitude * s;
    }
    case Kind::sampled: {
      if (yy < y.front() || yy > y.back()) return 0.0;
      const auto it = std::upper_bound(y.begin(), y.end(), yy);
      if (it == y.end()) return f.back();
      const std::size_t i = static_cast<std::size_t>(it - y.begin()) - 1;
      const double w = (yy - y[i]) / (y[i + 1] - y[i]);
      return (1 - w) * f[i] + w * f[i + 1];
    }
  }
  return 0.0;
}

cplx InitialDatum::mellin(cplx sigma) const {
  if (kind == Kind::sampled) return pieces_transform(linear_pieces(*this), sigma);
  const auto s = log_samples(*this, sigma.real());
  return sample_transform(s, sigma.imag());
}

double InitialDatum::l1() const {
  if (kind == Kind::sampled) {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
      const double p = f[i], q = f[i + 1], d = y[i + 1] - y[i];
      if (p * q >= 0) {
        acc += 0.5 * d * (std::abs(p) + std::abs(q));
      } else {
        acc += 0.5 * d * (p * p + q * q) / (std::abs(p) + std::abs(q));
      }
    }
    return acc;
  }
  auto g = [&](double yy) { return cplx(std::abs((*this)(yy))); };
  return integrate_gk(g, a, b, 1e-12, 1e-300, 4000, 0.5, {}).value.real();
}

double InitialDatum::sup() const {
  if (kind == Kind::sampled) {
    double m = 0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
  }
  return std::abs(amplitude);
}

InitialDatum make_bump(double a, double b, double amplitude) {
  if (!(a > 0 && b > a && std::isfinite(b))) throw DomainError("bump datum: need 0 < a < b < inf");
  InitialDatum d;
  d.kind = InitialDatum::Kind::analytic_bump;
  d.a = a;
  d.b = b;
  d.amplitude = amplitude;
  return d;
}

InitialDatum make_smoothed_indicator(double a, double b, double edge, double amplitude) {
  if (!(a > 0 && b > a && std::isfinite(b))) throw DomainError("indicator datum: need 0 < a < b < inf");
  if (!(edge > 0 && 2 * edge <= b - a)) throw DomainError("indicator datum: need 0 < 2 edge <= b - a");
  InitialDatum d;
  d.kind = InitialDatum::Kind::indicator_smoothed;
  d.a = a;
  d.b = b;
  d.edge = edge;
  d.amplitude = amplitude;
  return d;
}

InitialDatum make_sampled(std::vector<double> y, std::vector<double> f, double a, double b) {
  if (!(a > 0 && b > a && std::isfinite(b))) throw DomainError("sampled datum: need 0 < a < b < inf");
  if (y.size() != f.size() || y.size() < 2) throw DomainError("sampled datum: need two or more (y, f) pairs");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i]) || !std::isfinite(f[i])) throw DomainError("sampled datum: non-finite sample");
    if (i > 0 && !(y[i] > y[i - 1])) throw DomainError("sampled datum: y must increase strictly");
  }
  if (y.front() < a || y.back() > b) throw DomainError("sampled datum: samples outside the declared support");
  InitialDatum d;
  d.kind = InitialDatum::Kind::sampled;
  d.a = a;
  d.b = b;
  d.y = std::move(y);
  d.f = std::move(f);
  return d;
}

// ------------------------------------------------------------------ superposition

PointValue solve_u(double t, double x, const InitialDatum& f0, double rel_tol) {
  check_t(t);
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("Cauchy solve: need x > 0");
  const double Ya = std::log(f0.a), Yb = std::log(f0.b), Xl = std::log(x), Tl = std::log(t);
  // Real part: f0 Lambda; imaginary part: f0 times the Lambda error estimate.
  auto integrand = [&](double Y) {
    const double d = Xl - Y;
    if (d == 0.0) return cplx(0.0);
    const double w = f0(std::exp(Y));
    if (w == 0.0) return cplx(0.0);
    const double tau = t * std::exp(-Y);
    const auto l = eval_lambda_logx(tau, d, tau > 0.55 ? Regime::direct : Regime::log_regularized);
    return cplx(w * l.value, std::abs(w) * l.err);
  };
  const double scale = f0.l1() / x;
  PointValue r;
  auto add = [&](const QuadResult& q) {
    r.value += q.value.real();
    r.err += q.error_estimate + q.value.imag();
  };
  auto plain = [&](double lo, double hi) {
    if (!(hi > lo)) return;
    std::vector<double> br;
    if (Tl > lo && Tl < hi) br.push_back(Tl);
    if (Xl > lo && Xl < hi) br.push_back(Xl);
    add(integrate_gk(integrand, lo, hi, rel_tol, 1e-14 * scale, 8000, 0.5, br));
  };
  const double tx = t / x;
  if (Xl > Ya && Xl < Yb && tx < 0.5) {
    // |x/y - 1|^{2t/y - 1} at y = x, removed by d = w xi^{x/(2t)}.
    const double q = 1.0 / (2 * tx);
    const double wl = std::min(0.5, Xl - Ya), wr = std::min(0.5, Yb - Xl);
    auto mapped = [&](double side, double w) {
      auto g = [&](double xi) {
        if (xi <= 0) return cplx(0.0);
        const double d = w * std::pow(xi, q);
        return integrand(Xl - side * d) * (w * q * std::pow(xi, q - 1));
      };
      add(integrate_gk(g, 0.0, 1.0, rel_tol, 1e-14 * scale, 8000, 0.5, {}));
    };
    plain(Ya, Xl - wl);
    mapped(1.0, wl);
    mapped(-1.0, wr);
    plain(Xl + wr, Yb);
  } else {
    plain(Ya, Yb);
  }
  return r;
}

std::vector<PointValue> solve_points(double t, const std::vector<double>& x, const InitialDatum& f0) {
  check_t(t);
  std::vector<PointValue> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !std::isfinite(x[i])) throw DomainError("Cauchy solve: need x > 0");
    const double X = std::log(x[i]);
    if (std::abs(X) * kH > 2.5) throw DomainError("Cauchy solve: |log x| too large for the table spacing");
    const double c = abscissa_for(X);
    const auto tab = mellin_table(t, c, f0);
    out[i] = invert(tab->M, tab->abs_sum, tab->end_mag, c, X);
  }
  return out;
}

RadialProfile solve_profile(double t, const LogGrid& grid, const InitialDatum& f0, std::vector<double>* err) {
  const auto pv = solve_points(t, grid.nodes, f0);
  RadialProfile p;
  p.grid = grid.nodes;
  p.t_stamp = t;
  p.values.resize(pv.size());
  if (err) err->resize(pv.size());
  for (std::size_t i = 0; i < pv.size(); ++i) {
    p.values[i] = pv[i].value;
    if (err) (*err)[i] = pv[i].err;
  }
  return p;
}

PointValue apply_L_via_green(double t, double x, const InitialDatum& f0) {
  check_t(t);
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("apply_L_via_green: need x > 0");
  const double X = std::log(x);
  if (std::abs(X) * kH > 2.5) throw DomainError("apply_L_via_green: |log x| too large for the table spacing");
  const double c = abscissa_for(X);
  const auto tab = mellin_table(t, c, f0);
  return invert(tab->dMdt, tab->dt_abs_sum, tab->dt_end_mag, c, X);
}

}  // namespace wavekin
