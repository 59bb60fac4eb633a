#pragma once

#include <vector>

#include "wavekin/complexfn.hpp"
#include "wavekin/kinetic.hpp"

namespace wavekin {

// Integrable initial data with compact support (a, b), 0 < a < b.
struct InitialDatum {
  enum class Kind { sampled, analytic_bump, indicator_smoothed };
  Kind kind = Kind::analytic_bump;
  double a = 0, b = 0;
  double amplitude = 1;
  double edge = 0;             // ramp width of the smoothed indicator
  std::vector<double> y, f;    // samples, linearly interpolated

  double operator()(double y) const;
  // \int f0(y) y^{sigma-1} dy.
  cplx mellin(cplx sigma) const;
  double l1() const;
  double sup() const;
};

InitialDatum make_bump(double a, double b, double amplitude = 1);
InitialDatum make_smoothed_indicator(double a, double b, double edge, double amplitude = 1);
// Raises DomainError when samples are unsorted, non-finite or outside the declared support.
InitialDatum make_sampled(std::vector<double> y, std::vector<double> f, double a, double b);

struct PointValue {
  double value = 0, err = 0;
};

// \int f0(y) Lambda(t/y, x/y) dy/y by adaptive quadrature in log y.
PointValue solve_u(double t, double x, const InitialDatum& f0, double rel_tol = 1e-8);

// The same superposition for all grid points at once, inverted from its Mellin transform
// M(s) = sqrt(2 pi) B(s) (1/2 pi i) \int t^{s-sigma} Gamma(sigma-s) F0(sigma)/B(sigma) dsigma.
RadialProfile solve_profile(double t, const LogGrid& grid, const InitialDatum& f0,
                            std::vector<double>* err = nullptr);
std::vector<PointValue> solve_points(double t, const std::vector<double>& x, const InitialDatum& f0);

// L(u(t))(x) = \int f0(z) dLambda/dt(t/z, x/z) dz/z^2, through the time derivative of M.
PointValue apply_L_via_green(double t, double x, const InitialDatum& f0);

}  // namespace wavekin
