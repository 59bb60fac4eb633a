#include "wavekin/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "wavekin/contour.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/kernels.hpp"

namespace wavekin {

LogGrid make_log_grid(double x_min, double x_max, int n) {
  if (!(x_min > 0 && x_max > x_min)) throw DomainError("log grid: need 0 < x_min < x_max");
  if (n < 16) throw DomainError("log grid: need n >= 16");
  LogGrid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n = n;
  g.delta = std::log(x_max / x_min) / (n - 1);
  g.nodes.resize(static_cast<std::size_t>(n));
  const double l0 = std::log(x_min);
  for (int i = 0; i < n; ++i) g.nodes[static_cast<std::size_t>(i)] = std::exp(l0 + i * g.delta);
  g.nodes.front() = x_min;
  g.nodes.back() = x_max;
  g.nodes.back() = x_max;
  return g;
}

namespace {

// Cardinal function of four-point cubic interpolation on the integers.
double cardinal(double xi) {
  const double a = std::abs(xi);
  if (a <= 1) return (a + 1) * (a - 1) * (a - 2) / 2;
  if (a <= 2) return -(a - 1) * (a - 2) * (a - 3) / 6;
  return 0.0;
}

double weight(int m, double d) {
  auto f = [&](double eta) {
    if (eta == 0.0) return cplx(0.0);
    return cplx(kernel_k(eta) * cardinal(eta / d - m));
  };
  std::vector<double> br;
  for (int k = m - 1; k <= m + 1; ++k) br.push_back(k * d);
  if (std::abs(m) > 2) return integrate_gk(f, (m - 2) * d, (m + 2) * d, 1e-12, 1e-18, 2000, 0.0, br).value.real();
  br.push_back(0.0);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return integrate_gk(f, (m - 2) * d, (m + 2) * d, 1e-12, 1e-18, 2000, 0.0, br).value.real();
}

double total_weight(double d) {
  auto f = [&](double eta) {
    if (eta == 0.0) return cplx(0.0);
    return cplx(kernel_k(eta) * (1.0 - cardinal(eta / d)));
  };
  const double core = integrate_gk(f, -2 * d, 2 * d, 1e-12, 1e-18, 2000, 0.0, {-d, 0.0, d}).value.real();
  return core + kernel_tail_above(2 * d) + kernel_tail_below(-2 * d);
}

}  // namespace

CollisionOperator::CollisionOperator(const LogGrid& grid, TailLaw tails, const simd::Ops* ops)
    : grid_(grid), tails_(tails), ops_(ops ? ops : &simd::active()) {
  const int n = grid_.n;
  const double d = grid_.delta;
  if (tails_.left && !(std::abs(tails_.left_power) < 2)) throw DomainError("left tail power must lie in (-2, 2)");
  if (tails_.right && !(std::abs(tails_.right_power) < 2)) throw DomainError("right tail power must lie in (-2, 2)");
  double reach = 0;
  if (tails_.left) reach = std::max(reach, 40.0 / (2 - std::abs(tails_.left_power)));
  if (tails_.right) reach = std::max(reach, 40.0 / (2 - std::abs(tails_.right_power)));
  pad_ = static_cast<int>(std::ceil(reach / d));
  const int M = n - 1 + pad_;
  wp_.assign(static_cast<std::size_t>(2 * M + 1), 0.0);
  for (int m = -M; m <= M; ++m)
    if (m != 0) wp_[static_cast<std::size_t>(m + M)] = weight(m, d);
  c_.assign(static_cast<std::size_t>(2 * n - 1), 0.0);
  for (int k = 0; k < 2 * n - 1; ++k) c_[static_cast<std::size_t>(k)] = wp_[static_cast<std::size_t>(k - (n - 1) + M)];
  S_ = total_weight(d);
}

double CollisionOperator::tail_sum(const double* u, int i) const {
  const int n = grid_.n, M = n - 1 + pad_;
  const double d = grid_.delta;
  double s = 0;
  if (tails_.left && u[0] != 0.0)
    for (int j = -1; j >= -pad_; --j)
      s += wp_[static_cast<std::size_t>(j - i + M)] * u[0] * std::exp(tails_.left_power * j * d);
  if (tails_.right && u[n - 1] != 0.0)
    for (int j = n; j < n + pad_; ++j)
      s += wp_[static_cast<std::size_t>(j - i + M)] * u[n - 1] * std::exp(tails_.right_power * (j - n + 1) * d);
  return s;
}

void CollisionOperator::apply(const double* u, double* out) const {
  const int n = grid_.n;
  const bool tails = tails_.left || tails_.right;
  for (int i = 0; i < n; ++i) {
    double acc = ops_->dot(&c_[static_cast<std::size_t>(n - 1 - i)], u, static_cast<std::size_t>(n));
    if (tails) acc += tail_sum(u, i);
    out[i] = 2.0 / grid_.nodes[static_cast<std::size_t>(i)] * (acc - S_ * u[i]);
  }
}

std::vector<double> CollisionOperator::apply(const std::vector<double>& u) const {
  if (static_cast<int>(u.size()) != grid_.n) throw DomainError("collision operator: size mismatch");
  std::vector<double> out(u.size());
  apply(u.data(), out.data());
  return out;
}

namespace {

LogGrid grid_of(const RadialProfile& p) {
  const std::size_t n = p.grid.size();
  if (n < 16 || p.values.size() != n) throw DomainError("profile: need at least 16 nodes and matching values");
  const LogGrid g = make_log_grid(p.grid.front(), p.grid.back(), static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(g.nodes[i] / p.grid[i] - 1) > 1e-9) throw DomainError("profile grid is not geometric");
  return g;
}

void check_resolved(const std::vector<double>& v) {
  double m = 0;
  for (double a : v) {
    if (!std::isfinite(a)) throw DomainError("profile has non-finite values");
    m = std::max(m, std::abs(a));
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (std::abs(v[i + 1] - v[i]) > 0.5 * m)
      throw ResolutionError("profile not resolved by the grid near node " + std::to_string(i));
  }
}

std::shared_ptr<const CollisionOperator> cached_operator(const LogGrid& g, const TailLaw& t) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, bool, bool, double, double>, std::shared_ptr<const CollisionOperator>>
      cache;
  std::lock_guard lk(mu);
  const auto key = std::make_tuple(g.x_min, g.x_max, g.n, t.left, t.right, t.left_power, t.right_power);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() > 8) cache.clear();
  auto op = std::make_shared<const CollisionOperator>(g, t);
  cache.emplace(key, op);
  return op;
}

}  // namespace

RadialProfile apply_L(const RadialProfile& p, TailLaw tails) {
  const LogGrid g = grid_of(p);
  check_resolved(p.values);
  RadialProfile out;
  out.grid = p.grid;
  out.t_stamp = p.t_stamp;
  out.values = cached_operator(g, tails)->apply(p.values);
  return out;
}

double L_quadrature(const std::function<double(double)>& u, double x) {
  if (!(x > 0)) throw DomainError("L_quadrature: x > 0");
  const double ux = u(x);
  auto f = [&](double eta) {
    if (eta == 0.0) return cplx(0.0);
    return cplx(kernel_k(eta) * (u(x * std::exp(eta)) - ux));
  };
  // The odd leading part cancels on |eta| < eps; rounding in u(x e^eta) - u(x) dominates there.
  const double eps = 1e-6;
  const double a = integrate_gk(f, -40.0, -eps, 1e-11, 1e-14, 8000, 0.5, {}).value.real();
  const double b = integrate_gk(f, eps, 40.0, 1e-11, 1e-14, 8000, 0.5, {}).value.real();
  return 2.0 / x * (a + b);
}

double L_transport(const std::function<double(double)>& du, double x, double lo, double hi) {
  if (!(x > 0 && lo > 0 && hi > lo)) throw DomainError("L_transport: bad arguments");
  auto f = [&](double Y) {
    const double y = std::exp(Y);
    if (y == x) return cplx(0.0);
    return cplx(eval_H(x / y) * du(y));
  };
  std::vector<double> br;
  if (x > lo && x < hi) br.push_back(std::log(x));
  return integrate_gk(f, std::log(lo), std::log(hi), 1e-10, 1e-13, 8000, 0.25, br).value.real();
}

cplx mellin_moment(const RadialProfile& p, cplx s) {
  const std::size_t n = p.grid.size();
  if (n < 2) throw DomainError("moment: profile too short");
  const double d = std::log(p.grid.back() / p.grid.front()) / static_cast<double>(n - 1);
  cplx acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * p.values[i] * std::exp(s * std::log(p.grid[i]));
  }
  return d * acc;
}

double l1_norm(const RadialProfile& p) {
  const std::size_t n = p.grid.size();
  const double d = std::log(p.grid.back() / p.grid.front()) / static_cast<double>(n - 1);
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * std::abs(p.values[i]) * p.grid[i];
  return d * acc;
}

double boundary_fraction(const RadialProfile& p) {
  const std::size_t n = p.grid.size();
  const std::size_t m = std::max<std::size_t>(2, n / 50);
  double edge = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(p.values[i]) * p.grid[i];
    total += a;
    if (i < m || i + m >= n) edge += a;
  }
  return total > 0 ? edge / total : 0.0;
}

std::vector<EvolutionState> evolve(const RadialProfile& u0, double t_end, const EvolveControls& ctl,
                                   EvolveStats* stats) {
  if (!(t_end > 0)) throw DomainError("evolve: t_end > 0");
  const LogGrid g = grid_of(u0);
  check_resolved(u0.values);
  const auto op = cached_operator(g, ctl.tails);
  const std::size_t n = u0.values.size();

  std::vector<double> snaps;
  for (double s : ctl.snapshots) {
    if (s < 0 || s > t_end) throw DomainError("evolve: snapshot outside [0, t_end]");
    snaps.push_back(s);
  }
  snaps.push_back(t_end);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  double umax = 0;
  for (double v : u0.values) umax = std::max(umax, std::abs(v));
  const double rtol = ctl.rel_tol;
  const double atol = ctl.abs_tol > 0 ? ctl.abs_tol : std::max(rtol * umax, 1e-300);

  auto record = [&](double tau, const std::vector<double>& u, std::vector<EvolutionState>& out) {
    EvolutionState st;
    st.tau = tau;
    st.profile.grid = u0.grid;
    st.profile.values = u;
    st.profile.t_stamp = tau;
    for (const cplx& s : ctl.moment_s) st.moments.emplace_back(s, mellin_moment(st.profile, s));
    out.push_back(std::move(st));
  };

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  std::vector<double> u = u0.values, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y(n), un(n);
  op->apply(u.data(), k1.data());
  double fn = 0;
  for (double v : k1) fn = std::max(fn, std::abs(v));
  double dt = fn > 0 ? std::min(0.01 * umax / fn, 0.1 * t_end) : 0.1 * t_end;
  double tau = 0;
  std::vector<EvolutionState> out;
  std::size_t next = 0;
  if (snaps[0] == 0.0) record(0.0, u, out), ++next;
  EvolveStats st;
  while (next < snaps.size()) {
    if (st.steps + st.rejected > ctl.max_steps) throw StepCollapseError("evolve: step budget exhausted");
    const double target = snaps[next];
    bool hit = false;
    if (tau + dt >= target) {
      dt = target - tau;
      hit = true;
    }
    if (dt < 1e-12 * t_end) throw StepCollapseError("evolve: step size collapsed");
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + dt * a21 * k1[i];
    op->apply(y.data(), k2.data());
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + dt * (a31 * k1[i] + a32 * k2[i]);
    op->apply(y.data(), k3.data());
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    op->apply(y.data(), k4.data());
    for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    op->apply(y.data(), k5.data());
    for (std::size_t i = 0; i < n; ++i)
      y[i] = u[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    op->apply(y.data(), k6.data());
    for (std::size_t i = 0; i < n; ++i) un[i] = u[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    op->apply(un.data(), k7.data());
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(u[i]), std::abs(un[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      tau = hit ? target : tau + dt;
      u.swap(un);
      k1.swap(k7);
      ++st.steps;
      if (hit) {
        record(tau, u, out);
        ++next;
      }
    } else {
      ++st.rejected;
    }
    const double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    dt *= std::clamp(fac, 0.2, 5.0);
  }
  for (const auto& s : out) st.boundary_fraction = std::max(st.boundary_fraction, boundary_fraction(s.profile));
  if (stats) *stats = st;
  return out;
}

MultiplierResult multiplier_check(const std::vector<EvolutionState>& traj, cplx s) {
  if (traj.size() < 3) throw DomainError("multiplier check: need at least three snapshots");
  for (const auto& st : traj)
    if (boundary_fraction(st.profile) > 1e-6) throw TruncationError("multiplier check: boundary mass above 1e-6");
  const cplx w = eval_W(s - 1.0);
  MultiplierResult r;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const cplx dm = (mellin_moment(traj[k + 1].profile, s) - mellin_moment(traj[k - 1].profile, s)) /
                    (traj[k + 1].tau - traj[k - 1].tau);
    const cplx rhs = w * mellin_moment(traj[k].profile, s - 1.0);
    r.residual = std::max(r.residual, std::abs(dm - rhs));
    r.scale = std::max(r.scale, std::abs(rhs));
  }
  return r;
}

}  // namespace wavekin
