#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "wavekin/complexfn.hpp"

namespace wavekin {

struct SymbolSample {
  double t = 0;
  cplx s;
  cplx value;
  double err = 0;
};

// U(t,s) = B(s)/sqrt(2pi) (1/2 pi i) \int_{Re sigma = beta} t^{-(sigma-s)} Gamma(sigma-s)/B(sigma) dsigma.
// beta = 0 picks a default in (Re s, 3); 1/B is analytic there.
SymbolSample eval_U(double t, cplx s, double beta = 0);
// Same function with the contour moved left of sigma = s; beta_p in (0, Re s).
SymbolSample eval_U_small_t(double t, cplx s, double beta_p = 0);
// Dispatches between the two representations.
SymbolSample eval_U_auto(double t, cplx s);
cplx eval_dU_ds(double t, cplx s, double beta = 0);
cplx eval_dU_dt(double t, cplx s, double beta = 0);

// Laplace-side function, log(-z) = log z - i pi so that Arg(-z) lies in (-3pi/2, -pi/2).
cplx eval_V(cplx z, cplx s, double beta = 0);
double V_functional_residual(cplx z, cplx s);
// Inverse Laplace transform of V(., s) at t along two rays leaving d > 0.
cplx invert_V(double t, cplx s, double d);

double check_U_ode(double t, cplx s, double dt);

constexpr double kEnvelopeB = 0.66729036729314878;  // e^{gamma/2}/2
inline double U_envelope(double t, cplx s) { return std::exp(-2.0 * t * std::log(kEnvelopeB * std::abs(s))); }

// U, dU/ds, dU/dt on the line Re s = c at Im s = j h, by trapezoid on Re sigma = beta_sigma.
// Only the line integral is tabulated; residues of 1/B between c and beta_sigma are not added.
// An optional sigma_weight multiplies 1/B(sigma) inside the integral.
struct UTable {
  double t = 0, c = 0, h = 0, beta_sigma = 0;
  long j_lo = 0, j_hi = -1;
  std::vector<cplx> U, dUds, dUdt;
  std::size_t idx(long j) const { return static_cast<std::size_t>(j - j_lo); }
  std::size_t size() const { return U.size(); }
};
UTable make_U_table(double t, double c, double h, long j_lo, long j_hi, double beta_sigma, bool derivatives,
                    const std::function<cplx(cplx)>& sigma_weight = {});

}  // namespace wavekin
