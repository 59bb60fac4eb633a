#pragma once
#include <memory>
#include <string>
#include <vector>

#include "wavekin/complexfn.hpp"
#include "wavekin/contour.hpp"

namespace wavekin {

// log(-W(1/2)); the constant separating the beta<1/2 and beta>1/2 strip
// representations.
cplx log_neg_W_half();

// Kernel 1/(1 - e^{2 i pi w}) and its w-derivative, overflow-safe.
cplx strip_kernel(cplx w);
cplx strip_kernel_prime(cplx w);

// Best contour abscissa for a strip point with real part a.
double choose_beta(double a);

// b(s) = log B(s) for Re s in (0,2) by the strip integral; beta = 0 picks one.
cplx log_B_strip(cplx s, double beta = 0.0, double tol = 1e-14);
cplx eval_B_strip(cplx s, double beta = 0.0, double tol = 1e-14);
// b'(s) from the differentiated kernel.
cplx dlog_B_strip(cplx s, double beta = 0.0, double tol = 1e-14);

// Meromorphic continuation by the functional equation.
cplx eval_B(cplx s);
cplx eval_B_prime(cplx s);  // Cauchy derivative on a circle of radius 0.05

// Distance from s to the nearest pole of B.
double distance_to_B_pole(cplx s);
// Distance from s to the nearest zero of B.
double distance_to_B_zero(cplx s);

cplx residue_inv_B(double sigma);
cplx residue_B(double sigma);
cplx residue_B_over_s2(double sigma);

struct ResidueLedger {
  cplx B1, B5, W1, Wp0, Wp2;
  cplx rho3, rho4, resB0, resBm1;
  cplx c1, c2, c3;
  std::vector<cplx> P, Q;  // n = 0..5
};
const ResidueLedger& derived_constants();

// Persistent cache of strip values (little-endian records of six doubles).
struct BCacheStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
};
void bcache_enable(bool on);
void bcache_clear();
std::size_t bcache_load(const std::string& path);
std::size_t bcache_save(const std::string& path);
BCacheStats bcache_stats();

// Values of B on the line Re s = c at v_j = j h, j in [j_lo, j_hi], computed
// with a trapezoid rule at spacing h/2 on the strip contour and prefix sums.
struct BLine {
  double c = 0, h = 0;
  long j_lo = 0, j_hi = -1;
  std::vector<cplx> logB, dlogB;
  cplx log_at(long j) const { return logB[static_cast<std::size_t>(j - j_lo)]; }
  cplx dlog_at(long j) const { return dlogB[static_cast<std::size_t>(j - j_lo)]; }
  cplx B(long j) const { return std::exp(log_at(j)); }
  std::size_t size() const { return logB.size(); }
};
BLine make_B_line(double c, double h, long j_lo, long j_hi, bool with_derivative);
// Shared, grown-on-demand line tables.
std::shared_ptr<const BLine> cached_B_line(double c, double h, long j_lo, long j_hi, bool with_derivative);

}  // namespace wavekin
