#pragma once
#include "wavekin/complexfn.hpp"

namespace wavekin {

double eval_K(double x, double y);
double eval_H(double r);
double eval_M(double x, double y);

// |H(x/z) - (+-2z times the integral of K(x,.) beyond z)| by adaptive quadrature.
double check_H_from_K(double x, double z, double tol = 1e-12);

// The r-integral of r^s H(r) over (0, inf), split at 1.
cplx mellin_H(cplx s, double tol = 1e-13);
// |W(s) + s * mellin_H(s)|.
double check_W_mellin(cplx s, double tol = 1e-13);

// Closed-form integrals of the homogeneous kernel k(eta) = x^2 K(x, x e^eta) e^eta
// over the half-lines eta > a (a > 0) and eta < b (b < 0).
double kernel_tail_above(double a);
double kernel_tail_below(double b);
double kernel_k(double eta);

}  // namespace wavekin
