#include <doctest.h>

#include <cmath>

#include "wavekin/contour.hpp"

using namespace wavekin;

TEST_CASE("vertical Gaussian") {
  ContourSpec sp{0.0, 10.0, 1e-13, 1e-15, 4000};
  auto r = integrate_vertical([](cplx s) { return std::exp(-s.imag() * s.imag()); }, sp,
                              {TailModel::Kind::exponential, 1.0, 0.0});
  CHECK(std::abs(r.value - cplx(0, std::sqrt(kPi))) < 1e-10);
}

TEST_CASE("vertical Lorentzian with power tail") {
  ContourSpec sp{0.0, 1e4, 1e-12, 1e-15, 4000};
  auto f = [](cplx s) { return cplx(1.0 / (1 + s.imag() * s.imag())); };
  auto r = integrate_vertical(f, sp, {TailModel::Kind::power, 2.0, 0.0});
  CHECK(std::abs(r.value - cplx(0, kPi)) < 1e-3);
  CHECK(std::abs(r.value - cplx(0, kPi)) <= 2.5 * r.truncation_tail);
  ContourSpec sp2 = sp;
  sp2.half_height *= 2;
  auto r2 = integrate_vertical(f, sp2, {TailModel::Kind::power, 2.0, 0.0});
  CHECK(std::abs(r2.value - r.value) <= 2 * r.truncation_tail);
  // With the analytic tail restored the value is exact.
  CHECK(std::abs(r.value + cplx(0, 2 * std::atan(1.0 / 1e4)) - cplx(0, kPi)) < 1e-6);
}

TEST_CASE("vertical zero integrand") {
  auto r = integrate_vertical([](cplx) { return cplx(0.0); }, ContourSpec{});
  CHECK(r.value == cplx(0.0));
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("tail model violation is reported") {
  ContourSpec sp{0.0, 20.0, 1e-10, 1e-14, 4000};
  CHECK_THROWS_AS(integrate_vertical([](cplx) { return cplx(1.0); }, sp, {TailModel::Kind::exponential, 2.0, 0.0}),
                  TailModelError);
}

TEST_CASE("oscillatory integrand with panel cap") {
  ContourSpec sp{0.0, 40.0, 1e-12, 1e-15, 20000};
  const double w = 7.0;
  auto f = [w](cplx s) { return std::exp(-0.5 * s.imag() * s.imag()) * std::exp(cplx(0, -w * s.imag())); };
  auto r = integrate_vertical(f, sp, {TailModel::Kind::exponential, 1.0, w});
  CHECK(std::abs(r.value - cplx(0, std::sqrt(2 * kPi) * std::exp(-0.5 * w * w))) < 1e-12);
}

TEST_CASE("circle residues") {
  CHECK(std::abs(integrate_circle([](cplx z) { return 1.0 / z; }, 0.0, 1.0).value - 1.0) < 1e-14);
  CHECK(std::abs(integrate_circle([](cplx z) { return 1.0 / (z * z); }, 0.0, 0.5).value) < 1e-14);
  CHECK(std::abs(integrate_circle([](cplx z) { return gamma_fn(z); }, -1.0, 0.3).value + 1.0) < 1e-12);
  auto f = [](cplx z) { return std::exp(z) / (z - 0.1); };
  CHECK(std::abs(integrate_circle(f, 0.0, 0.5).value - integrate_circle(f, 0.0, 0.25).value) < 1e-10);
}

TEST_CASE("bisection") {
  CHECK(std::abs(find_root_real([](double x) { return x * x - 2; }, 1, 2, 1e-12) - std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(find_root_real([](double x) { return x * x + 1; }, -1, 1, 1e-12), BracketError);
}

TEST_CASE("Gauss-Legendre") {
  std::vector<double> x, w;
  gauss_legendre(10, x, w);
  double s = 0, m = 0;
  for (int i = 0; i < 10; ++i) {
    s += w[i];
    m += w[i] * std::pow(x[i], 18);
  }
  CHECK(std::abs(s - 2) < 1e-14);
  CHECK(std::abs(m - 2.0 / 19) < 1e-14);
}
