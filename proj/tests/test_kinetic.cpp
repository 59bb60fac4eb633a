#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavekin/errors.hpp"
#include "wavekin/kernels.hpp"
#include "wavekin/kinetic.hpp"
#include "wavekin/lambda.hpp"
#include "wavekin/simd.hpp"

using namespace wavekin;

namespace {

double u_bump(double x) { return bump(x, 0.5, 1.5); }

RadialProfile sampled(const LogGrid& g, double (*f)(double)) {
  RadialProfile p;
  p.grid = g.nodes;
  for (double x : g.nodes) p.values.push_back(f(x));
  return p;
}

}  // namespace

TEST_CASE("log grid") {
  const auto g = make_log_grid(1e-3, 1e3, 512);
  REQUIRE(g.nodes.size() == 512);
  CHECK(g.nodes.front() == 1e-3);
  CHECK(g.nodes.back() == 1e3);
  CHECK(g.nodes[101] / g.nodes[100] == doctest::Approx(std::exp(g.delta)).epsilon(1e-13));
  CHECK_THROWS_AS(make_log_grid(1.0, 0.5, 64), DomainError);
  CHECK_THROWS_AS(make_log_grid(1.0, 2.0, 8), DomainError);
}

TEST_CASE("constants are annihilated") {
  for (int n : {64, 512}) {
    const auto g = make_log_grid(1e-2, 1e2, n);
    CollisionOperator op(g, TailLaw{true, true, 0, 0});
    const auto L = op.apply(std::vector<double>(n, 1.0));
    for (int i = 0; i < n; ++i) CHECK(std::abs(L[i]) * g.nodes[i] <= 1e-10);
  }
}

TEST_CASE("power laws are eigenfunctions") {
  const auto g = make_log_grid(1e-3, 1e3, 512);
  for (double a : {-1.0, 0.5, 1.0}) {
    CollisionOperator op(g, TailLaw{true, true, a, a});
    std::vector<double> u;
    for (double x : g.nodes) u.push_back(std::pow(x, a));
    const auto L = op.apply(u);
    const double w = eval_W(cplx(-a, 0)).real();
    for (int i : {100, 255, 400}) CHECK(std::abs(L[i] / std::pow(g.nodes[i], a - 1) - w) <= 1e-6 * std::abs(w));
  }
}

TEST_CASE("K form and transport form") {
  auto du = [](double x) {
    const double h = 1e-6 * x;
    return (u_bump(x + h) - u_bump(x - h)) / (2 * h);
  };
  for (double x : {0.3, 0.6, 1.0, 1.3, 2.0}) {
    const double k = L_quadrature(u_bump, x);
    CHECK(std::abs(k - L_transport(du, x, 0.5, 1.5)) <= 1e-6 * std::max(1.0, std::abs(k)));
  }
  const double a = 0.1, b = 10;
  for (double x : {0.5, 1.0, 3.0}) {
    auto u = [&](double y) { return (y >= a && y <= b) ? y : 0.0; };
    const double h = L_transport([](double) { return 1.0; }, x, a, b) + eval_H(x / a) - eval_H(x / b);
    CHECK(std::abs(L_quadrature(u, x) - h) <= 1e-6 * std::abs(h));
  }
}

TEST_CASE("discrete operator converges to the quadrature") {
  std::vector<double> err;
  for (int n : {512, 1024, 2048}) {
    const auto g = make_log_grid(1e-3, 1e3, n);
    const auto L = apply_L(sampled(g, u_bump));
    double e = 0;
    for (int i = 0; i < n; ++i)
      if (g.nodes[i] > 0.2 && g.nodes[i] < 5) e = std::max(e, std::abs(L.values[i] - L_quadrature(u_bump, g.nodes[i])));
    err.push_back(e);
  }
  CHECK(err[0] < 0.01 * 2.35);
  CHECK(err[1] < err[0] / 4);
  CHECK(err[2] < err[1] / 4);
}

TEST_CASE("vector kernels give the same operator") {
  const auto g = make_log_grid(1e-3, 1e3, 300);
  const auto p = sampled(g, u_bump);
  CollisionOperator ref(g, {}, &simd::scalar_ops());
  CollisionOperator act(g, {}, &simd::active());
  const auto a = ref.apply(p.values), b = act.apply(p.values);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * (1 + std::abs(a[i])));
}

TEST_CASE("resolution guard") {
  const auto g = make_log_grid(1e-3, 1e3, 64);
  auto p = sampled(g, [](double x) { return x > 1.0 ? 1.0 : 0.0; });
  CHECK_THROWS_AS(apply_L(p), ResolutionError);
  p.values[10] = std::nan("");
  CHECK_THROWS_AS(apply_L(p), DomainError);
}

TEST_CASE("moments") {
  const auto g = make_log_grid(1e-3, 1e3, 1024);
  const auto p = sampled(g, u_bump);
  auto q = p;
  for (std::size_t i = 0; i < q.grid.size(); ++i) q.values[i] = u_bump(q.grid[i] / 2) / 2;
  for (double s : {1.0, 1.5, 2.5})
    CHECK(std::abs(mellin_moment(q, s) - std::pow(2.0, s - 1) * mellin_moment(p, s)) <=
          1e-6 * std::abs(mellin_moment(q, s)));
}

TEST_CASE("evolution obeys the multiplier law") {
  const auto g = make_log_grid(1e-5, 1e3, 683);
  EvolveControls ctl;
  for (int k = 0; k <= 8; ++k) ctl.snapshots.push_back(0.1 * k / 8);
  EvolveStats st;
  const auto tr = evolve(sampled(g, u_bump), 0.1, ctl, &st);
  CHECK(st.boundary_fraction <= 1e-6);
  for (double s : {1.5, 2.0, 2.5}) CHECK(multiplier_check(tr, cplx(s, 0)).relative() <= 0.01);
}

TEST_CASE("truncation is reported") {
  const auto g = make_log_grid(1e-3, 1e3, 512);
  EvolveControls ctl;
  for (int k = 0; k <= 4; ++k) ctl.snapshots.push_back(0.3 * k / 4);
  EvolveStats st;
  const auto tr = evolve(sampled(g, u_bump), 0.3, ctl, &st);
  CHECK(st.boundary_fraction > 1e-6);
  CHECK_THROWS_AS(multiplier_check(tr, cplx(2.0, 0)), TruncationError);
  CHECK(l1_norm(tr.back().profile) > 0);
  CHECK_THROWS_AS(evolve(sampled(g, u_bump), -1.0, ctl), DomainError);
}
