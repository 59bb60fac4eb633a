#include "wavekin/bfunc.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "wavekin/simd.hpp"

namespace wavekin {

cplx log_neg_W_half() {
  static const cplx v = log_neg_W(0.5);
  return v;
}

cplx strip_kernel(cplx w) {
  if (w.imag() > 0) {
    const cplx e = std::exp(cplx(0, 2 * kPi) * w);
    return 1.0 / (1.0 - e);
  }
  const cplx e = std::exp(cplx(0, -2 * kPi) * w);
  return -e / (1.0 - e);
}

cplx strip_kernel_prime(cplx w) {
  // 2 i pi e / (1 - e)^2 with e = e^{2 i pi w}; symmetric in e -> 1/e.
  const cplx e = w.imag() > 0 ? std::exp(cplx(0, 2 * kPi) * w) : std::exp(cplx(0, -2 * kPi) * w);
  const cplx d = 1.0 - e;
  return cplx(0, 2 * kPi) * e / (d * d);
}

namespace {

double beta_margin(double a, double b) {
  return std::min({b, 2.0 - b, a - b, 1.0 - a + b, std::abs(b - 0.5), std::abs(b - 1.5)});
}

struct CacheKey {
  long long re, im;
  std::uint64_t beta, tol;
  bool operator<(const CacheKey& o) const {
    return std::tie(re, im, beta, tol) < std::tie(o.re, o.im, o.beta, o.tol);
  }
};

struct BCache {
  std::shared_mutex mu;
  std::map<CacheKey, cplx> map;
  bool enabled = true;
  std::atomic<std::size_t> hits{0}, misses{0};
};
BCache& cache() {
  static BCache c;
  return c;
}
CacheKey make_key(cplx s, double beta, double tol) {
  return {std::llround(s.real() * 1e12), std::llround(s.imag() * 1e12), std::bit_cast<std::uint64_t>(beta),
          std::bit_cast<std::uint64_t>(tol)};
}

double validated_beta(cplx s, double beta) {
  const double a = s.real();
  if (!(a > 0.0 && a < 2.0)) throw DomainError("B strip: need Re s in (0, 2)");
  if (beta == 0.0) return choose_beta(a);
  if (!(beta > 0.0 && beta < 1.5 && beta < a && a < beta + 1.0) || std::abs(beta - 0.5) < 1e-9)
    throw DomainError("B strip: beta outside the admissible window");
  return beta;
}

template <class Kern>
cplx strip_integral(cplx s, double beta, double tol, Kern kern) {
  const double lo = std::min(0.0, s.imag()) - 12.0, hi = std::max(0.0, s.imag()) + 12.0;
  auto f = [&](double v) {
    const cplx rho(beta, v);
    return log_neg_W(rho) * kern(rho) * cplx(0, 1);
  };
  const double at = tol * (1.0 + std::abs(s.imag()));
  return integrate_gk(f, lo, hi, tol, at, 40000, 2.0, {0.0, s.imag()}).value;
}

// Sorted negative zeros of W, extended on demand.
const std::vector<double>& neg_zeros() {
  static const std::vector<double> z = locate_W_roots(40).w_zeros_neg;
  return z;
}
const std::vector<double>& pos_zeros() {
  static const std::vector<double> z = locate_W_roots(40).w_zeros_pos;
  return z;
}

double dist_int_family(cplx s, double start, double dir) {
  // Distance to {start + dir*k, k >= 0}.
  double k = std::round((s.real() - start) * dir);
  k = std::max(0.0, k);
  return std::abs(s - cplx(start + dir * k, 0.0));
}

}  // namespace

double choose_beta(double a) {
  double best = -1, bb = 0.0;
  const double lo = std::max(0.0, a - 1.0), hi = std::min(1.5, a);
  for (int i = 1; i < 400; ++i) {
    const double b = lo + (hi - lo) * i / 400.0;
    const double m = beta_margin(a, b);
    if (m > best) best = m, bb = b;
  }
  return bb;
}

cplx log_B_strip(cplx s, double beta, double tol) {
  beta = validated_beta(s, beta);
  auto& c = cache();
  const CacheKey key = make_key(s, beta, tol);
  if (c.enabled) {
    std::shared_lock lk(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) {
      ++c.hits;
      return it->second;
    }
  }
  cplx b = strip_integral(s, beta, tol, [&](cplx rho) { return strip_kernel(s - rho) - strip_kernel(0.5 - rho); });
  if (beta < 0.5) b -= log_neg_W_half();
  if (c.enabled) {
    std::unique_lock lk(c.mu);
    ++c.misses;
    c.map.emplace(key, b);
  }
  return b;
}

cplx eval_B_strip(cplx s, double beta, double tol) { return std::exp(log_B_strip(s, beta, tol)); }

cplx dlog_B_strip(cplx s, double beta, double tol) {
  beta = validated_beta(s, beta);
  return strip_integral(s, beta, tol, [&](cplx rho) { return strip_kernel_prime(s - rho); });
}

double distance_to_B_pole(cplx s) {
  double d = std::min(std::abs(s), std::abs(s + 1.0));
  d = std::min(d, dist_int_family(s, 9.0, 1.0));
  for (double z : neg_zeros()) {
    if (z < s.real() - 1.0) break;
    d = std::min(d, dist_int_family(s, z, -1.0));
  }
  return d;
}

double distance_to_B_zero(cplx s) {
  double d = std::min(std::abs(s - 3.0), std::abs(s - 4.0));
  d = std::min(d, dist_int_family(s, -6.0, -1.0));
  for (double z : pos_zeros()) {
    if (z + 1.0 > s.real() + 1.0) break;
    d = std::min(d, dist_int_family(s, z + 1.0, 1.0));
  }
  return d;
}

cplx eval_B(cplx s) {
  const double a = s.real();
  if (a >= 0.25 && a <= 1.75) return eval_B_strip(s);
  if (a < neg_zeros().back()) throw DomainError("B: Re s too far left");
  if (distance_to_B_pole(s) < 1e-6) throw PoleError("B: pole");
  const double n = std::round(a);
  if (std::abs(s - cplx(n, 0)) < 1e-6) {
    // Removable or regular integer point: Cauchy mean value.
    const double r = std::min(0.25, 0.45 * distance_to_B_pole(cplx(n, 0)));
    const cplx c(n, 0);
    return circle_coefficient([](cplx z) { return eval_B(z); }, c, r, 0, 64);
  }
  if (a > 1.75) {
    const int k = static_cast<int>(std::ceil(a - 1.75));
    cplx p = eval_B_strip(s - static_cast<double>(k));
    for (int i = 1; i <= k; ++i) p *= -eval_W(s - static_cast<double>(i));
    return p;
  }
  const int k = static_cast<int>(std::ceil(0.25 - a));
  cplx p = eval_B_strip(s + static_cast<double>(k));
  for (int i = 0; i < k; ++i) p /= -eval_W(s + static_cast<double>(i));
  return p;
}

cplx eval_B_prime(cplx s) {
  return circle_coefficient([](cplx z) { return eval_B(z); }, s, 0.05, 1, 64);
}

cplx residue_inv_B(double sigma) {
  const cplx c(sigma, 0);
  // Stay clear of neighbouring zeros of B.
  double other = 1.0;
  for (int k = 0; k < 64; ++k) other = std::min(other, distance_to_B_zero(c + std::polar(0.5, 2 * kPi * k / 64)));
  const double r = std::clamp(0.9 * other, 0.02, 0.25);
  return integrate_circle([](cplx z) { return 1.0 / eval_B(z); }, c, r, 32).value;
}

cplx residue_B(double sigma) {
  return integrate_circle([](cplx z) { return eval_B(z); }, cplx(sigma, 0), 0.2, 32).value;
}

cplx residue_B_over_s2(double sigma) {
  return integrate_circle([](cplx z) { return eval_B(z) / (z * z); }, cplx(sigma, 0), 0.2, 32).value;
}

const ResidueLedger& derived_constants() {
  static const ResidueLedger L = [] {
    ResidueLedger r;
    r.B1 = eval_B(1.0);
    r.B5 = eval_B(5.0);
    r.W1 = eval_W(1.0);
    r.Wp0 = eval_W_prime(0.0);
    r.Wp2 = eval_W_prime(2.0);
    r.rho3 = residue_inv_B(3.0);
    r.rho4 = residue_inv_B(4.0);
    r.resB0 = residue_B(0.0);
    r.resBm1 = residue_B(-1.0);
    r.c1 = -1.0 / (r.B1 * r.W1 * r.Wp2);
    r.c2 = -6.0 * r.rho4 * r.B1 / (kSqrt2Pi * r.Wp0);
    r.c3 = r.B5 * r.rho4 / kSqrt2Pi;
    for (int n = 0; n <= 5; ++n) {
      const cplx c(-n, 0);
      r.P.push_back(integrate_circle([](cplx w) { return gamma_fn(w) / eval_B(w); }, c, 0.25, 32).value);
      r.Q.push_back(integrate_circle([](cplx w) { return gamma_fn(w + 1.0) / eval_B(w); }, c, 0.25, 32).value);
    }
    return r;
  }();
  return L;
}

void bcache_enable(bool on) {
  std::unique_lock lk(cache().mu);
  cache().enabled = on;
}
void bcache_clear() {
  std::unique_lock lk(cache().mu);
  cache().map.clear();
  cache().hits = 0;
  cache().misses = 0;
}
BCacheStats bcache_stats() {
  std::shared_lock lk(cache().mu);
  return {cache().map.size(), cache().hits.load(), cache().misses.load()};
}

namespace {
void put_le(std::ofstream& os, double v) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}
bool get_le(std::ifstream& is, double& v) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  v = std::bit_cast<double>(u);
  return true;
}
}  // namespace

std::size_t bcache_save(const std::string& path) {
  std::shared_lock lk(cache().mu);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write cache file " + path);
  for (const auto& [k, v] : cache().map) {
    put_le(os, k.re * 1e-12);
    put_le(os, k.im * 1e-12);
    put_le(os, std::bit_cast<double>(k.beta));
    put_le(os, std::bit_cast<double>(k.tol));
    put_le(os, v.real());
    put_le(os, v.imag());
  }
  return cache().map.size();
}

std::size_t bcache_load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return 0;
  std::unique_lock lk(cache().mu);
  std::size_t n = 0;
  double f[6];
  while (true) {
    bool ok = true;
    for (double& x : f) ok = ok && get_le(is, x);
    if (!ok) break;
    cache().map[make_key(cplx(f[0], f[1]), f[2], f[3])] = cplx(f[4], f[5]);
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------- line tables

BLine make_B_line(double c, double h, long j_lo, long j_hi, bool with_derivative) {
  if (!(h > 0) || j_hi < j_lo) throw DomainError("make_B_line: bad range");
  const long m = static_cast<long>(std::floor(c - 0.5));
  const double cp = c - static_cast<double>(m);
  // Abscissa for the strip contour.
  double beta = 0.0, best = -1;
  for (double b : {0.2, 0.25, 0.3, 0.7, 0.75, 0.8, 1.0, 1.1, 1.2, 1.25}) {
    if (!(b < cp && cp < b + 1)) continue;
    const double mg = beta_margin(cp, b);
    if (mg > best) best = mg, beta = b;
  }
  const double hq = 0.5 * h;  // fine spacing, two sub-steps per output
  const long nD = static_cast<long>(std::ceil(8.0 / hq));
  const long k_lo = std::min(0L, 2 * j_lo) - nD, k_hi = std::max(0L, 2 * j_hi) + nD;
  const std::size_t nk = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<cplx> Q(nk);
  for (std::size_t i = 0; i < nk; ++i) Q[i] = log_neg_W(cplx(beta, (k_lo + static_cast<long>(i)) * hq));
  for (std::size_t i = 1; i < nk; ++i)
    if (std::abs(Q[i].imag() - Q[i - 1].imag()) >= kPi) throw BranchError("B line: arg(-W) jumps by pi");
  // Compensated prefix sums S[i] = sum_{k < k_lo + i} Q_k.
  std::vector<cplx> S(nk + 1);
  {
    double sr = 0, si = 0, cr = 0, ci = 0;
    S[0] = 0.0;
    for (std::size_t i = 0; i < nk; ++i) {
      auto add = [](double& s, double& comp, double x) {
        const double t = s + x;
        comp += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
      };
      add(sr, cr, Q[i].real());
      add(si, ci, Q[i].imag());
      S[i + 1] = cplx(sr + cr, si + ci);
    }
  }
  auto S_at = [&](long k) { return S[static_cast<std::size_t>(k - k_lo)]; };
  const cplx wc(cp - beta, 0.0);
  // Decaying parts of the kernels.
  std::vector<cplx> Dr(2 * nD + 1), Kp(2 * nD + 1);
  for (long t = 0; t <= 2 * nD; ++t) {
    const long n = nD - t;
    const cplx w = wc + cplx(0, n * hq);
    Dr[t] = strip_kernel(w) - (n > 0 ? 1.0 : 0.0);
    Kp[t] = strip_kernel_prime(w);
  }
  cplx C0 = 0.0;
  for (long k = -nD; k <= nD; ++k) {
    const cplx d0 = strip_kernel(0.5 - cplx(beta, k * hq)) - (k < 0 ? 1.0 : 0.0);
    C0 += Q[static_cast<std::size_t>(k - k_lo)] * d0;
  }
  const std::size_t nout = static_cast<std::size_t>(j_hi - j_lo + 1);
  std::vector<cplx> conv(nout), dconv(with_derivative ? nout : 0);
  {
    const cplx* g[2] = {Dr.data(), Kp.data()};
    cplx* o[2] = {conv.data(), dconv.data()};
    const long off = 2 * j_lo - nD - k_lo;
    simd::active().corr(Q.data() + off, 2, g, with_derivative ? 2 : 1, static_cast<std::size_t>(2 * nD + 1), o, nout);
  }
  BLine L;
  L.c = c;
  L.h = h;
  L.j_lo = j_lo;
  L.j_hi = j_hi;
  L.logB.resize(nout);
  if (with_derivative) L.dlogB.resize(nout);
  const cplx ih(0, hq);
  const cplx corr = beta < 0.5 ? log_neg_W_half() : cplx(0.0);
  for (std::size_t i = 0; i < nout; ++i) {
    const long j = j_lo + static_cast<long>(i);
    cplx b = ih * ((S_at(2 * j) - S_at(0)) + conv[i] - C0) - corr;
    cplx db = with_derivative ? ih * dconv[i] : cplx(0.0);
    const cplx s(cp, j * h);
    // Walk from Re s = cp to c.
    if (m > 0) {
      for (long q = 0; q < m; ++q) {
        const cplx z = s + static_cast<double>(q);
        b += log_neg_W(z);
        if (with_derivative) db += eval_W_prime(z) / eval_W(z);
      }
    } else if (m < 0) {
      for (long q = 1; q <= -m; ++q) {
        const cplx z = s - static_cast<double>(q);
        b -= log_neg_W(z);
        if (with_derivative) db -= eval_W_prime(z) / eval_W(z);
      }
    }
    L.logB[i] = b;
    if (with_derivative) L.dlogB[i] = db;
  }
  return L;
}

std::shared_ptr<const BLine> cached_B_line(double c, double h, long j_lo, long j_hi, bool with_derivative) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const BLine>> lines;
  std::lock_guard lk(mu);
  auto key = std::make_pair(std::bit_cast<std::uint64_t>(c), std::bit_cast<std::uint64_t>(h));
  auto it = lines.find(key);
  if (it != lines.end()) {
    const auto& L = *it->second;
    if (L.j_lo <= j_lo && L.j_hi >= j_hi && (!with_derivative || !L.dlogB.empty())) return it->second;
    j_lo = std::min(j_lo, L.j_lo);
    j_hi = std::max(j_hi, L.j_hi);
    with_derivative = with_derivative || !L.dlogB.empty();
  }
  auto p = std::make_shared<const BLine>(make_B_line(c, h, j_lo, j_hi, with_derivative));
  lines[key] = p;
  return p;
}

}  // namespace wavekin
