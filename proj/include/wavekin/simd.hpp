#pragma once
#include <complex>
#include <cstddef>
#include <string>

namespace wavekin::simd {

using cplx = std::complex<double>;

// out[k][j] = sum_{n<taps} g[k][n] * r[j*stride + n], j < n_out, k < n_kernels (<= 3).
using CorrFn = void (*)(const cplx* r, std::size_t stride, const cplx* const* g, int n_kernels,
                        std::size_t taps, cplx* const* out, std::size_t n_out);
// sum_j f[j] * exp(-i j theta).
using PhaseFn = cplx (*)(const cplx* f, std::size_t n, double theta);
// sum_i a[i] * b[i].
using DotFn = double (*)(const double* a, const double* b, std::size_t n);

struct Ops {
  std::string name;
  CorrFn corr;
  PhaseFn phase_sum;
  DotFn dot;
};

const Ops& scalar_ops();
// Nullptr when the CPU or build lacks the instruction set.
const Ops* avx2_ops();
const Ops* neon_ops();

// Selected once at first use: the widest supported set, unless the
// environment variable WAVEKIN_SIMD=scalar forces the reference kernels.
const Ops& active();

}  // namespace wavekin::simd
