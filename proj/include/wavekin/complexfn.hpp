#pragma once
#include <complex>
#include <vector>

#include "wavekin/errors.hpp"

namespace wavekin {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;
inline constexpr double kLog2Pi = 1.83787706640934548356;

cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);
cplx polygamma(int n, cplx z);  // n in 0..3
inline cplx digamma(cplx z) { return polygamma(0, z); }
inline cplx trigamma(cplx z) { return polygamma(1, z); }

// cot and csc^2 that stay finite for large |Im z|.
cplx cot_safe(cplx z);
cplx csc2_safe(cplx z);

cplx eval_W(cplx s);
cplx eval_W_prime(cplx s);
cplx eval_W_second(cplx s);

// Principal log(-W(s)).
cplx log_neg_W(cplx s);

// |W(s) - (-2 log|s/2| - 2 gamma_e)|.
double asymptote_check(cplx s);

struct PoleZeroTable {
  std::vector<double> w_poles_pos;   // 4n, n >= 1
  std::vector<double> w_poles_neg;   // -2(2n+1), n >= 0
  std::vector<double> w_zeros_pos;   // sigma_n in (4n+3, 4n+4), n >= 1
  std::vector<double> w_zeros_neg;   // sigma*_n in (-2(2n+1), -2(2n+1)+1), n >= 1
  std::vector<double> trivial_zeros{0.0, 2.0};
};

PoleZeroTable locate_W_roots(int n_max);

bool is_W_pole(cplx s, double tol = 1e-12);

}  // namespace wavekin
