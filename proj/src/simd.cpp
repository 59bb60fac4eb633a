#include "wavekin/simd.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define WAVEKIN_X86 1
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#define WAVEKIN_NEON 1
#endif

namespace wavekin::simd {
namespace {

constexpr std::size_t kResync = 64;

void corr_scalar(const cplx* r, std::size_t stride, const cplx* const* g, int nk, std::size_t taps,
                 cplx* const* out, std::size_t n_out) {
  for (std::size_t j = 0; j < n_out; ++j) {
    const double* rr = reinterpret_cast<const double*>(r + j * stride);
    for (int k = 0; k < nk; ++k) {
      const double* gg = reinterpret_cast<const double*>(g[k]);
      double re = 0.0, im = 0.0;
      for (std::size_t n = 0; n < taps; ++n) {
        const double a = rr[2 * n], b = rr[2 * n + 1], c = gg[2 * n], d = gg[2 * n + 1];
        re += a * c - b * d;
        im += a * d + b * c;
      }
      out[k][j] = {re, im};
    }
  }
}

cplx phase_scalar(const cplx* f, std::size_t n, double theta) {
  double re = 0.0, im = 0.0;
  const double cr = std::cos(theta), ci = -std::sin(theta);
  for (std::size_t base = 0; base < n; base += kResync) {
    double pr = std::cos(theta * base), pi = -std::sin(theta * base);
    const std::size_t end = std::min(n, base + kResync);
    for (std::size_t j = base; j < end; ++j) {
      const double a = f[j].real(), b = f[j].imag();
      re += a * pr - b * pi;
      im += a * pi + b * pr;
      const double t = pr * cr - pi * ci;
      pi = pr * ci + pi * cr;
      pr = t;
    }
  }
  return {re, im};
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

#ifdef WAVEKIN_X86
__attribute__((target("avx2,fma"))) inline __m256d cmul(__m256d a, __m256d gr, __m256d gi) {
  const __m256d sw = _mm256_permute_pd(a, 0b0101);
  return _mm256_fmaddsub_pd(a, gr, _mm256_mul_pd(sw, gi));
}

__attribute__((target("avx2,fma"))) void corr_avx2(const cplx* r, std::size_t stride, const cplx* const* g,
                                                   int nk, std::size_t taps, cplx* const* out,
                                                   std::size_t n_out) {
  if (stride != 1) {
    // Strided outputs: vectorize across taps instead.
    for (std::size_t j = 0; j < n_out; ++j) {
      const double* rr = reinterpret_cast<const double*>(r + j * stride);
      for (int k = 0; k < nk; ++k) {
        const double* gg = reinterpret_cast<const double*>(g[k]);
        __m256d acc_rc = _mm256_setzero_pd(), acc_sw = _mm256_setzero_pd();
        std::size_t n = 0;
        for (; n + 2 <= taps; n += 2) {
          const __m256d a = _mm256_loadu_pd(rr + 2 * n);
          const __m256d c = _mm256_loadu_pd(gg + 2 * n);
          acc_rc = _mm256_fmadd_pd(a, c, acc_rc);                             // (ac, bd)
          acc_sw = _mm256_fmadd_pd(a, _mm256_permute_pd(c, 0b0101), acc_sw);  // (ad, bc)
        }
        alignas(32) double x[4], y[4];
        _mm256_store_pd(x, acc_rc);
        _mm256_store_pd(y, acc_sw);
        double re = (x[0] - x[1]) + (x[2] - x[3]);
        double im = (y[0] + y[1]) + (y[2] + y[3]);
        for (; n < taps; ++n) {
          const double a = rr[2 * n], b = rr[2 * n + 1], c = gg[2 * n], d = gg[2 * n + 1];
          re += a * c - b * d;
          im += a * d + b * c;
        }
        out[k][j] = {re, im};
      }
    }
    return;
  }
  std::size_t j = 0;
  for (; j + 4 <= n_out; j += 4) {
    for (int k = 0; k < nk; ++k) {
      const double* gg = reinterpret_cast<const double*>(g[k]);
      __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
      const double* rr = reinterpret_cast<const double*>(r + j);
      for (std::size_t n = 0; n < taps; ++n) {
        const __m256d gr = _mm256_broadcast_sd(gg + 2 * n), gi = _mm256_broadcast_sd(gg + 2 * n + 1);
        a0 = _mm256_add_pd(a0, cmul(_mm256_loadu_pd(rr + 2 * n), gr, gi));
        a1 = _mm256_add_pd(a1, cmul(_mm256_loadu_pd(rr + 2 * n + 4), gr, gi));
      }
      double* o = reinterpret_cast<double*>(out[k] + j);
      _mm256_storeu_pd(o, a0);
      _mm256_storeu_pd(o + 4, a1);
    }
  }
  if (j < n_out) {
    const cplx* gt[3] = {nullptr, nullptr, nullptr};
    cplx* ot[3] = {nullptr, nullptr, nullptr};
    for (int k = 0; k < nk; ++k) {
      gt[k] = g[k];
      ot[k] = out[k] + j;
    }
    corr_scalar(r + j, 1, gt, nk, taps, ot, n_out - j);
  }
}

__attribute__((target("avx2,fma"))) cplx phase_avx2(const cplx* f, std::size_t n, double theta) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  const double c4r = std::cos(4 * theta), c4i = -std::sin(4 * theta);
  const __m256d rr = _mm256_set1_pd(c4r), ri = _mm256_set1_pd(c4i);
  std::size_t base = 0;
  for (; base + kResync <= n; base += kResync) {
    alignas(32) double p[8];
    for (int l = 0; l < 4; ++l) {
      p[2 * l] = std::cos(theta * (base + l));
      p[2 * l + 1] = -std::sin(theta * (base + l));
    }
    __m256d p0 = _mm256_load_pd(p), p1 = _mm256_load_pd(p + 4);
    const double* ff = reinterpret_cast<const double*>(f + base);
    for (std::size_t j = 0; j < kResync; j += 4) {
      const __m256d f0 = _mm256_loadu_pd(ff + 2 * j), f1 = _mm256_loadu_pd(ff + 2 * j + 4);
      const __m256d p0r = _mm256_movedup_pd(p0), p0i = _mm256_permute_pd(p0, 0b1111);
      const __m256d p1r = _mm256_movedup_pd(p1), p1i = _mm256_permute_pd(p1, 0b1111);
      acc0 = _mm256_add_pd(acc0, cmul(f0, p0r, p0i));
      acc1 = _mm256_add_pd(acc1, cmul(f1, p1r, p1i));
      p0 = cmul(p0, rr, ri);
      p1 = cmul(p1, rr, ri);
    }
  }
  alignas(32) double a[4], b[4];
  _mm256_store_pd(a, acc0);
  _mm256_store_pd(b, acc1);
  cplx s{(a[0] + a[2]) + (b[0] + b[2]), (a[1] + a[3]) + (b[1] + b[3])};
  if (base < n) {
    const cplx rest = phase_scalar(f + base, n - base, theta);
    s += rest * std::polar(1.0, -theta * base);
  }
  return s;
}

__attribute__((target("avx2,fma"))) double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, _mm256_add_pd(s0, s1));
  double s = (t[0] + t[1]) + (t[2] + t[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}
#endif

#ifdef WAVEKIN_NEON
inline float64x2_t cmul_neon(float64x2_t a, double gr, double gi) {
  const float64x2_t sw = vextq_f64(a, a, 1);
  const float64x2_t t = vmulq_n_f64(a, gr);
  const float64x2_t u = vmulq_f64(sw, float64x2_t{-gi, gi});
  return vaddq_f64(t, u);
}

void corr_neon(const cplx* r, std::size_t stride, const cplx* const* g, int nk, std::size_t taps,
               cplx* const* out, std::size_t n_out) {
  for (std::size_t j = 0; j < n_out; ++j) {
    const double* rr = reinterpret_cast<const double*>(r + j * stride);
    for (int k = 0; k < nk; ++k) {
      const double* gg = reinterpret_cast<const double*>(g[k]);
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t n = 0; n < taps; ++n) acc = vaddq_f64(acc, cmul_neon(vld1q_f64(rr + 2 * n), gg[2 * n], gg[2 * n + 1]));
      out[k][j] = {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
    }
  }
}

cplx phase_neon(const cplx* f, std::size_t n, double theta) { return phase_scalar(f, n, theta); }

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0), s1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 = vfmaq_f64(s0, vld1q_f64(a + i), vld1q_f64(b + i));
    s1 = vfmaq_f64(s1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  const float64x2_t s = vaddq_f64(s0, s1);
  double r = vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}
#endif

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", corr_scalar, phase_scalar, dot_scalar};
  return ops;
}

const Ops* avx2_ops() {
#ifdef WAVEKIN_X86
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const Ops ops{"avx2", corr_avx2, phase_avx2, dot_avx2};
  return ok ? &ops : nullptr;
#else
  return nullptr;
#endif
}

const Ops* neon_ops() {
#ifdef WAVEKIN_NEON
  static const Ops ops{"neon", corr_neon, phase_neon, dot_neon};
  return &ops;
#else
  return nullptr;
#endif
}

const Ops& active() {
  static const Ops* sel = [] {
    const char* env = std::getenv("WAVEKIN_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (const Ops* a = avx2_ops()) return a;
    if (const Ops* n = neon_ops()) return n;
    return &scalar_ops();
  }();
  return *sel;
}

}  // namespace wavekin::simd
