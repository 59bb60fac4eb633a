#pragma once
#include <functional>
#include <vector>

#include "wavekin/complexfn.hpp"

namespace wavekin {

struct ContourSpec {
  double abscissa = 1.0;
  double half_height = 50.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_refinements = 4000;
};

struct QuadResult {
  cplx value{0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
  double truncation_tail = 0.0;
};

// Declared decay of |f(c+iv)| for |v| beyond the truncation, plus the
// oscillation frequency used to cap panel widths.
struct TailModel {
  enum class Kind { none, exponential, power };
  Kind kind = Kind::none;
  double rate = 0.0;
  double omega = 0.0;
};

using CFun = std::function<cplx(cplx)>;
using RFunC = std::function<cplx(double)>;

// Adaptive Gauss-Kronrod (7/15) of a complex-valued function of a real
// variable over [a,b], with optional initial breakpoints.
QuadResult integrate_gk(const RFunC& f, double a, double b, double rel_tol, double abs_tol,
                        int max_panels = 4000, double max_width = 0.0,
                        const std::vector<double>& breaks = {});

// Value of the integral of f(c+iv) i dv over [-V, V].
QuadResult integrate_vertical(const CFun& f, const ContourSpec& spec, const TailModel& tail = {});

// (1/2 pi i) times the integral of f over the circle, trapezoid with doubling.
QuadResult integrate_circle(const CFun& f, cplx center, double radius, int n_min = 32,
                            int n_max = 1 << 16);

// Fixed-node circle mean (1/n) sum f(c + r e^{i theta_k}) e^{i m theta_k} r^{-m}:
// the m-th Taylor/Laurent coefficient.
cplx circle_coefficient(const CFun& f, cplx center, double radius, int m, int n);

double find_root_real(const std::function<double(double)>& f, double lo, double hi, double tol);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace wavekin
