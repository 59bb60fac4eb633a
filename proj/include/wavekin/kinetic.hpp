#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wavekin/complexfn.hpp"
#include "wavekin/simd.hpp"

namespace wavekin {

struct LogGrid {
  double x_min = 0, x_max = 0;
  int n = 0;
  double delta = 0;  // log of the node ratio
  std::vector<double> nodes;
};
LogGrid make_log_grid(double x_min, double x_max, int n);

struct RadialProfile {
  std::vector<double> grid, values;
  double t_stamp = 0;
};

// Power laws u ~ u_edge (x / x_edge)^p beyond the grid; disabled sides are zero.
struct TailLaw {
  bool left = false, right = false;
  double left_power = 0, right_power = 0;
};

// Discrete generator (Lu)(x) = (2/x) \int k(eta) (u(x e^eta) - u(x)) d eta on a log grid,
// u interpolated by local cubics in log x. Constants are annihilated exactly.
class CollisionOperator {
 public:
  explicit CollisionOperator(const LogGrid& grid, TailLaw tails = {}, const simd::Ops* ops = nullptr);
  std::vector<double> apply(const std::vector<double>& u) const;
  void apply(const double* u, double* out) const;
  const LogGrid& grid() const { return grid_; }
  // Sum of all off-diagonal weights: the loss rate times x/2.
  double loss_weight() const { return S_; }

 private:
  double tail_sum(const double* u, int i) const;
  LogGrid grid_;
  TailLaw tails_;
  const simd::Ops* ops_;
  std::vector<double> c_;   // c_[k] = w_{k-(n-1)}, w_0 = 0
  std::vector<double> wp_;  // w_m for |m| up to the padding reach
  int pad_ = 0;
  double S_ = 0;
};

// Raises ResolutionError for a profile the grid does not resolve.
RadialProfile apply_L(const RadialProfile& p, TailLaw tails = {});

// Reference values by adaptive quadrature of the same generator.
double L_quadrature(const std::function<double(double)>& u, double x);
// Transport form \int H(x/y) u'(y) dy/y over (lo, hi).
double L_transport(const std::function<double(double)>& du, double x, double lo, double hi);

struct EvolveControls {
  double rel_tol = 1e-7;
  double abs_tol = 0;  // 0: rel_tol * max|u0|
  std::vector<double> snapshots;
  std::vector<cplx> moment_s;
  long max_steps = 20000000;
  TailLaw tails;
};

struct EvolutionState {
  double tau = 0;
  RadialProfile profile;
  std::vector<std::pair<cplx, cplx>> moments;
};

struct EvolveStats {
  long steps = 0, rejected = 0;
  double boundary_fraction = 0;
};

std::vector<EvolutionState> evolve(const RadialProfile& u0, double t_end, const EvolveControls& controls,
                                   EvolveStats* stats = nullptr);

// Trapezoid in log x of u(x) x^s over the grid.
cplx mellin_moment(const RadialProfile& p, cplx s);
// Share of the x-weighted mass in the outer two percent of nodes on either side.
double boundary_fraction(const RadialProfile& p);

struct MultiplierResult {
  double residual = 0, scale = 0;
  double relative() const { return scale > 0 ? residual / scale : residual; }
};
// max over interior snapshots of |dM(s)/dt - W(s-1) M(s-1)| by centred differences.
// Raises TruncationError when the boundary share exceeds 1e-6 in any snapshot.
MultiplierResult multiplier_check(const std::vector<EvolutionState>& traj, cplx s);

double l1_norm(const RadialProfile& p);

}  // namespace wavekin
