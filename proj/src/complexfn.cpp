#include "wavekin/complexfn.hpp"

#include <array>
#include <cmath>

#include "wavekin/contour.hpp"

namespace wavekin {
namespace {

constexpr std::array<double, 9> kBern = {1.0 / 6,          -1.0 / 30,   1.0 / 42,
                                         -1.0 / 30,        5.0 / 66,    -691.0 / 2730,
                                         7.0 / 6,          -3617.0 / 510, 43867.0 / 798};

bool is_nonpos_int(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Asymptotic series, valid for |z| >= 15 off the negative axis.
cplx polygamma_asym(int n, cplx z) {
  const cplx iz = 1.0 / z;
  const cplx iz2 = iz * iz;
  switch (n) {
    case 0: {
      cplx sum = 0.0, p = iz2;
      for (int k = 1; k <= 9; ++k, p *= iz2) sum += kBern[k - 1] / (2.0 * k) * p;
      return std::log(z) - 0.5 * iz - sum;
    }
    case 1: {
      cplx sum = 0.0, p = iz2 * iz;
      for (int k = 1; k <= 9; ++k, p *= iz2) sum += kBern[k - 1] * p;
      return iz + 0.5 * iz2 + sum;
    }
    case 2: {
      cplx sum = 0.0, p = iz2 * iz2;
      for (int k = 1; k <= 9; ++k, p *= iz2) sum += (2.0 * k + 1) * kBern[k - 1] * p;
      return -iz2 - iz2 * iz - sum;
    }
    default: {
      cplx sum = 0.0, p = iz2 * iz2 * iz;
      for (int k = 1; k <= 9; ++k, p *= iz2) sum += (2.0 * k + 1) * (2.0 * k + 2) * kBern[k - 1] * p;
      return 2.0 * iz2 * iz + 3.0 * iz2 * iz2 + sum;
    }
  }
}

cplx polygamma_right(int n, cplx z) {
  cplx acc = 0.0;
  while (std::abs(z) < 15.0) {
    const cplx iz = 1.0 / z;
    switch (n) {
      case 0: acc -= iz; break;
      case 1: acc += iz * iz; break;
      case 2: acc -= 2.0 * iz * iz * iz; break;
      default: acc += 6.0 * iz * iz * iz * iz; break;
    }
    z += 1.0;
  }
  return acc + polygamma_asym(n, z);
}

// Series of cot x - 1/x, csc^2 x - 1/x^2 and csc^2 x cot x - 1/x^3 about 0.
constexpr std::array<double, 9> kCotReg = {-1.0 / 3,          -1.0 / 45,          -2.0 / 945,
                                           -1.0 / 4725,       -2.0 / 93555,       -1382.0 / 638512875,
                                           -4.0 / 18243225,   -3617.0 / 162820783125.0,
                                           -87734.0 / 38979295480125.0};
constexpr std::array<double, 9> kCsc2Reg = {1.0 / 3,           1.0 / 15,           2.0 / 189,
                                            1.0 / 675,         2.0 / 10395,        1382.0 / 58046625,
                                            4.0 / 1403325,     3617.0 / 10854718875.0,
                                            87734.0 / 2292899734125.0};
constexpr std::array<double, 9> kCscCotReg = {-1.0 / 15,          -4.0 / 189,         -1.0 / 225,
                                              -8.0 / 10395,       -1382.0 / 11609325, -8.0 / 467775,
                                              -3617.0 / 1550674125.0, -701872.0 / 2292899734125.0,
                                              -349222.0 / 8955143071875.0};

cplx series_odd(const std::array<double, 9>& c, cplx x) {
  const cplx x2 = x * x;
  cplx acc = 0.0;
  for (int k = 8; k >= 0; --k) acc = acc * x2 + c[k];
  return acc * x;
}
cplx series_even(const std::array<double, 9>& c, cplx x) {
  const cplx x2 = x * x;
  cplx acc = 0.0;
  for (int k = 8; k >= 0; --k) acc = acc * x2 + c[k];
  return acc;
}

// Nearest removable point -4n (n >= 0) if within 0.5, else -1.
long removable_index(cplx s) {
  if (s.real() > 0.5) return -1;
  const double n = std::round(-s.real() / 4.0);
  if (n < 0) return -1;
  if (std::abs(s + 4.0 * n) < 0.5) return static_cast<long>(n);
  return -1;
}

// psi^(k)(z) with the pole at z = -m removed; z near -m, m = 2n.
cplx polygamma_reg(int k, cplx z, long m) {
  cplx acc = polygamma(k, z + static_cast<double>(m + 1));
  for (long j = 0; j < m; ++j) {
    const cplx iz = 1.0 / (z + static_cast<double>(j));
    switch (k) {
      case 0: acc -= iz; break;
      case 1: acc += iz * iz; break;
      default: acc -= 2.0 * iz * iz * iz; break;
    }
  }
  return acc;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpos_int(z)) throw PoleError("log_gamma: pole at non-positive integer");
  if (z.real() < -60.0) {
    // Reflection; log sin taken on the principal branch.
    const cplx pz = kPi * z;
    return std::log(kPi) - std::log(std::sin(pz)) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (std::abs(z) < 15.0 || z.real() < 0.5) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx iz = 1.0 / z, iz2 = iz * iz;
  cplx sum = 0.0, p = iz;
  for (int k = 1; k <= 9; ++k, p *= iz2) sum += kBern[k - 1] / (2.0 * k * (2.0 * k - 1)) * p;
  return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + sum - shift;
}

cplx gamma_fn(cplx z) {
  if (is_nonpos_int(z)) throw PoleError("gamma: pole at non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(log_gamma(1.0 - z)));
  return std::exp(log_gamma(z));
}

cplx polygamma(int n, cplx z) {
  if (n < 0 || n > 3) throw DomainError("polygamma: order must be 0..3");
  if (is_nonpos_int(z)) throw PoleError("polygamma: pole at non-positive integer");
  if (z.real() < 0.5 && std::abs(z.imag()) < 15.0) {
    const cplx c = cot_safe(kPi * z), q = csc2_safe(kPi * z);
    const cplx r = polygamma_right(n, 1.0 - z);
    switch (n) {
      case 0: return r - kPi * c;
      case 1: return kPi * kPi * q - r;
      case 2: return r - 2.0 * kPi * kPi * kPi * q * c;
      default: return 2.0 * std::pow(kPi, 4) * q * (2.0 * c * c + q) - r;
    }
  }
  return polygamma_right(n, z);
}

cplx cot_safe(cplx z) {
  if (z.imag() > 0) {
    const cplx q = std::exp(cplx(0, 2) * z);
    return cplx(0, 1) * (1.0 + q) / (q - 1.0);
  }
  const cplx q = std::exp(cplx(0, -2) * z);
  return cplx(0, 1) * (1.0 + q) / (1.0 - q);
}

cplx csc2_safe(cplx z) {
  const cplx q = z.imag() > 0 ? std::exp(cplx(0, 2) * z) : std::exp(cplx(0, -2) * z);
  const cplx d = q - 1.0;
  return -4.0 * q / (d * d);
}

bool is_W_pole(cplx s, double tol) {
  if (std::abs(s.imag()) > tol) return false;
  const double r = s.real();
  if (r > 2.0) {
    const double n = std::round(r / 4.0);
    return n >= 1 && std::abs(r - 4.0 * n) <= tol * std::max(1.0, r);
  }
  if (r < -1.0) {
    const double n = std::round((-r / 2.0 - 1.0) / 2.0);
    const double p = -2.0 * (2.0 * n + 1.0);
    return n >= 0 && std::abs(r - p) <= tol * std::max(1.0, -r);
  }
  return false;
}

cplx eval_W(cplx s) {
  if (s == cplx(0.0) || s == cplx(2.0)) return 0.0;
  if (is_W_pole(s)) throw PoleError("W: pole");
  const long n = removable_index(s);
  if (n >= 0) {
    const cplx x = kPi * (s + 4.0 * static_cast<double>(n)) / 4.0;
    return -2.0 * kEulerGamma - 2.0 * polygamma_reg(0, s / 2.0, 2 * n) - kPi * series_odd(kCotReg, x);
  }
  return -2.0 * kEulerGamma - 2.0 * polygamma(0, s / 2.0) - kPi * cot_safe(kPi * s / 4.0);
}

cplx eval_W_prime(cplx s) {
  if (is_W_pole(s)) throw PoleError("W': pole");
  const long n = removable_index(s);
  const double p2 = kPi * kPi / 4.0;
  if (n >= 0) {
    const cplx x = kPi * (s + 4.0 * static_cast<double>(n)) / 4.0;
    return -polygamma_reg(1, s / 2.0, 2 * n) + p2 * series_even(kCsc2Reg, x);
  }
  return -polygamma(1, s / 2.0) + p2 * csc2_safe(kPi * s / 4.0);
}

cplx eval_W_second(cplx s) {
  if (is_W_pole(s)) throw PoleError("W'': pole");
  const long n = removable_index(s);
  const double p3 = kPi * kPi * kPi / 8.0;
  if (n >= 0) {
    const cplx x = kPi * (s + 4.0 * static_cast<double>(n)) / 4.0;
    return -0.5 * polygamma_reg(2, s / 2.0, 2 * n) - p3 * series_odd(kCscCotReg, x);
  }
  const cplx z = kPi * s / 4.0;
  return -0.5 * polygamma(2, s / 2.0) - p3 * csc2_safe(z) * cot_safe(z);
}

cplx log_neg_W(cplx s) { return std::log(-eval_W(s)); }

double asymptote_check(cplx s) {
  return std::abs(eval_W(s) - (-2.0 * std::log(std::abs(s / 2.0)) - 2.0 * kEulerGamma));
}

PoleZeroTable locate_W_roots(int n_max) {
  if (n_max < 1) throw DomainError("locate_W_roots: n_max must be >= 1");
  PoleZeroTable t;
  auto wr = [](double x) { return eval_W(cplx(x, 0)).real(); };
  for (int n = 1; n <= n_max; ++n) {
    t.w_poles_pos.push_back(4.0 * n);
    const double lo = 4.0 * (n + 1) - 1.0, hi = 4.0 * (n + 1);
    t.w_zeros_pos.push_back(find_root_real(wr, lo, hi - 1e-9, 1e-11));
  }
  for (int n = 0; n <= n_max; ++n) t.w_poles_neg.push_back(-2.0 * (2 * n + 1));
  // W(s) = W(2-s), so the negative zeros mirror the positive ones; the
  // interval (-2,-1) holds none.
  for (int n = 1; n <= n_max; ++n) {
    const double p = -2.0 * (2 * n + 1);
    t.w_zeros_neg.push_back(find_root_real(wr, p + 1e-9, p + 1.0, 1e-11));
  }
  return t;
}

}  // namespace wavekin
