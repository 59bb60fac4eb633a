#include "wavekin/kernels.hpp"

#include <cmath>

#include "wavekin/contour.hpp"

namespace wavekin {
namespace {

double log_sinh(double a) {
  if (a > 1.0) return a + std::log1p(-std::exp(-2.0 * a)) - std::log(2.0);
  return std::log(std::sinh(a));
}

// H at r = 1 - d (below) or r = 1 + d, with the offset kept exact.
double H_offset(double d, bool below) {
  if (below) {
    const double r = 1.0 - d;
    return (std::log1p(r * r) - std::log(d * (2.0 - d))) / r;
  }
  const double r = 1.0 + d;
  return (std::log(d * (2.0 + d)) + std::log1p(r * r) - 4.0 * std::log1p(d)) / r;
}

}  // namespace

double eval_K(double x, double y) {
  if (!(x > 0) || !(y > 0)) throw DomainError("K: arguments must be positive");
  if (x == y) throw DomainError("K: diagonal x == y");
  const double d = std::abs((x - y) * (x + y));
  return (1.0 / d - 1.0 / (x * x + y * y)) * (y / x);
}

double eval_H(double r) {
  if (!(r > 0)) throw DomainError("H: argument must be positive");
  if (r == 1.0) throw DomainError("H: singular at r = 1");
  if (r < 1.0) {
    const double r2 = r * r;
    return (std::log1p(r2) - std::log1p(-r2)) / r;
  }
  const double q = 1.0 / (r * r);
  return std::log1p(-q * q) / r;
}

double eval_M(double x, double y) {
  if (!(x > 0) || !(y > 0)) throw DomainError("M: arguments must be positive");
  if (x == y) throw DomainError("M: diagonal x == y");
  const double x2 = x * x, y2 = y * y;
  const double lr = log_sinh(x2) - log_sinh(y2);
  const double t1 = std::exp(-log_sinh(std::abs((x - y) * (x + y))) + lr);
  const double t2 = std::exp(-log_sinh(x2 + y2) + lr);
  const double c = y / x;
  return (t1 - t2) * c * c * c;
}

double kernel_k(double eta) {
  // x^2 K(x, x e^eta) e^eta; depends on eta only.
  if (eta > 0) return 2.0 * std::exp(-2.0 * eta) / (-std::expm1(-4.0 * eta));
  return 2.0 * std::exp(4.0 * eta) / (-std::expm1(4.0 * eta));
}

double kernel_tail_above(double a) { return -0.5 * std::log(std::tanh(a)); }
double kernel_tail_below(double b) { return -0.5 * std::log1p(-std::exp(4.0 * b)); }

double check_H_from_K(double x, double z, double tol) {
  if (!(x > 0) || !(z > 0) || x == z) throw DomainError("check_H_from_K: need x, z > 0, x != z");
  const double d = std::abs(z - x);
  double integral;
  if (z > x) {
    // y = x + d e^u on u in [0, U], then the 2x/y^3 tail.
    const double U = std::log(1e6 * std::max(x, z) / d);
    auto f = [&](double u) {
      const double y = x + d * std::exp(u);
      return cplx(eval_K(x, y) * d * std::exp(u));
    };
    const double Y = x + d * std::exp(U);
    integral = integrate_gk(f, 0.0, U, tol, 1e-300).value.real() + x / (Y * Y) + std::pow(x, 5) / (3.0 * std::pow(Y, 6));
    return std::abs(eval_H(x / z) - 2.0 * z * integral);
  }
  // y = x - d e^u, from y = z down to 0.
  const double U = std::log(x / d);
  auto f = [&](double u) {
    const double y = x - d * std::exp(u);
    if (y <= 0) return cplx(0.0);
    return cplx(eval_K(x, y) * d * std::exp(u));
  };
  integral = integrate_gk(f, 0.0, U, tol, 1e-300).value.real();
  return std::abs(eval_H(x / z) + 2.0 * z * integral);
}

cplx mellin_H(cplx s, double tol) {
  if (!(s.real() > -2.0 && s.real() < 4.0)) throw DomainError("mellin_H: need Re s in (-2, 4)");
  const double lo = std::max(s.real() + 2.0, 1e-3), hi = std::max(4.0 - s.real(), 1e-3);
  const double ul = 45.0 / lo, uh = 45.0 / hi;
  const double ln2 = std::log(2.0);
  // (0, 1/2]: r = e^{-u}
  auto f1 = [&](double u) {
    const double r = std::exp(-u);
    return std::exp(-(s + 1.0) * u) * eval_H(r);
  };
  // [1/2, 1): r = 1 - e^{-w}
  auto f2 = [&](double w) {
    const double e = std::exp(-w), r = -std::expm1(-w);
    return std::pow(cplx(r), s) * H_offset(e, true) * e;
  };
  // (1, 2]: r = 1 + e^{-w}
  auto f3 = [&](double w) {
    const double e = std::exp(-w), r = 1.0 + e;
    return std::pow(cplx(r), s) * H_offset(e, false) * e;
  };
  // [2, inf): r = e^u
  auto f4 = [&](double u) {
    const double r = std::exp(u);
    return std::exp((s + 1.0) * u) * eval_H(r);
  };
  const double at = 1e-300;
  cplx v = integrate_gk(f1, ln2, ln2 + ul, tol, at, 20000).value;
  v += integrate_gk(f2, ln2, 60.0, tol, at, 20000).value;
  v += integrate_gk(f3, 0.0, 60.0, tol, at, 20000).value;
  v += integrate_gk(f4, ln2, ln2 + uh, tol, at, 20000).value;
  return v;
}

double check_W_mellin(cplx s, double tol) { return std::abs(eval_W(s) + s * mellin_H(s, tol)); }

}  // namespace wavekin
