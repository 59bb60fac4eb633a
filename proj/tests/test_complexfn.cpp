#include <doctest.h>

#include <cmath>
#include <random>

#include "wavekin/complexfn.hpp"
#include "wavekin/contour.hpp"

using namespace wavekin;

namespace {
// Reference values below come from 30-digit evaluations with mpmath.
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Independent oracle: Gauss product formula for Gamma.
cplx gamma_product(cplx z, int n = 2000000) {
  cplx lg = z * std::log(static_cast<double>(n)) - std::log(z);
  for (int k = 1; k <= n; ++k) lg += std::log(static_cast<double>(k)) - std::log(z + static_cast<double>(k));
  return std::exp(lg);
}
}  // namespace

TEST_CASE("log_gamma anchors") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
  CHECK(std::abs(log_gamma(0.5) - 0.572364942924700087) < 1e-14);
  CHECK(rel(log_gamma({0.3, 2.5}), {-3.19015820642839881, -0.514705295874041736}) < 1e-13);
  CHECK(rel(log_gamma({-3.7, 0.4}), {-2.16377306639411524, -12.5441090543026768}) < 1e-13);
  CHECK(rel(log_gamma({12, -30}), {-6.82161710942375819, -87.9481612777060364}) < 1e-13);
  CHECK_THROWS_AS(log_gamma(-2.0), PoleError);
}

TEST_CASE("gamma against product formula") {
  for (cplx z : {cplx(0.5, 0.0), cplx(1.7, 2.0), cplx(-2.3, 0.7)}) {
    CHECK(rel(gamma_fn(z), gamma_product(z)) < 1e-5);
  }
}

TEST_CASE("log_gamma recurrence on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  int n = 0;
  while (n < 50) {
    cplx z(u(rng), u(rng));
    if (std::abs(z) > 10 || std::abs(z.imag()) < 0.05) continue;
    ++n;
    CHECK(rel(std::exp(log_gamma(z + 1.0)), z * std::exp(log_gamma(z))) < 1e-12);
  }
}

TEST_CASE("polygamma anchors") {
  CHECK(std::abs(digamma(1.0) + kEulerGamma) < 1e-15);
  CHECK(std::abs(digamma(0.5) - (-kEulerGamma - 2 * std::log(2.0))) < 1e-14);
  CHECK(std::abs(digamma(2.0) - (1 - kEulerGamma)) < 1e-15);
  CHECK(std::abs(trigamma(1.0) - kPi * kPi / 6) < 1e-14);
  CHECK(std::abs(trigamma(0.5) - kPi * kPi / 2) < 1e-14);
  CHECK(std::abs(trigamma(2.0) - (kPi * kPi / 6 - 1)) < 1e-14);
  const cplx z1(0.3, 2.5), z2(-3.7, 0.4), z3(40, -7);
  CHECK(rel(polygamma(0, z1), {0.912748288395617963, 1.65174692159512999}) < 1e-13);
  CHECK(rel(polygamma(1, z1), {-0.0331926066401001035, -0.402903291248532270}) < 1e-13);
  CHECK(rel(polygamma(2, z1), {0.163618544944277078, -0.0276267326880984108}) < 1e-13);
  CHECK(rel(polygamma(3, z1), {0.0350945738423958386, 0.134150051401279533}) < 1e-12);
  CHECK(rel(polygamma(0, z2), {0.983772459075106021, 2.85921007605818005}) < 1e-13);
  CHECK(rel(polygamma(1, z2), {1.12004575593427893, -2.72840286754473450}) < 1e-13);
  CHECK(rel(polygamma(2, z2), {14.6910753636834898, 10.4734859607375774}) < 1e-13);
  CHECK(rel(polygamma(3, z2), {-86.4431652851807541, 62.8287692653437431}) < 1e-12);
  CHECK(rel(polygamma(0, z3), {3.69178606852681101, -0.175385324883322138}) < 1e-14);
  CHECK(rel(polygamma(3, z3), {2.67840200236544395e-5, 1.55523536794357668e-5}) < 1e-12);
  CHECK_THROWS_AS(digamma(0.0), PoleError);
}

TEST_CASE("W values and derivatives") {
  CHECK(eval_W(0.0) == cplx(0.0));
  CHECK(eval_W(2.0) == cplx(0.0));
  CHECK(std::abs(eval_W(1.0) - (4 * std::log(2.0) - kPi)) < 1e-14);
  struct Ref { cplx s, w, w1, w2; };
  const Ref refs[] = {
      {{0.5, 3}, {-1.99582496304298308, -0.304627220770207527}, {0.0610947491193070896, 0.610397162633244995},
       {-0.130310690462976727, -0.00551733578013615806}},
      {{-4.1, 0.2}, {-2.79938449880206893, -0.414981410965170298}, {-2.03451451699229439, 0.0742006228369190758},
       {0.351254348947470642, -0.597713063962622679}},
      {{-7.9, 0}, {-4.39166020053234163, 0}, {-2.25889455733200599, 0}, {-0.281980729873427335, 0}},
      {{3.3, -2}, {-1.75298480700814816, -1.86038063035399869}, {-0.674450835283483847, -0.819609547342540057},
       {-0.639193887462713688, 0.428023344345827377}},
  };
  for (const auto& r : refs) {
    CHECK(rel(eval_W(r.s), r.w) < 1e-13);
    CHECK(rel(eval_W_prime(r.s), r.w1) < 1e-12);
    CHECK(rel(eval_W_second(r.s), r.w2) < 1e-11);
  }
  CHECK(rel(eval_W({1, 100}), {-8.97844400499219890, 0}) < 1e-14);
  CHECK(rel(eval_W({-4 + 1e-7, 1e-7}), {-3.00000020724670300, -2.07246702591185898e-7}) < 1e-13);
  CHECK(rel(eval_W_prime(0.0), -kPi * kPi / 12) < 1e-14);
  CHECK_THROWS_AS(eval_W(4.0), PoleError);
  CHECK_THROWS_AS(eval_W(-2.0), PoleError);
}

TEST_CASE("W' matches finite differences on the strip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(-1.5, 3.5), ui(-5, 5);
  for (int i = 0; i < 40; ++i) {
    const cplx s(ur(rng), ui(rng));
    const double h = 1e-5;
    const cplx fd = (eval_W(s + h) - eval_W(s - h)) / (2 * h);
    CHECK(rel(eval_W_prime(s), fd) < 1e-7);
    const cplx fd2 = (eval_W_prime(s + h) - eval_W_prime(s - h)) / (2 * h);
    CHECK(rel(eval_W_second(s), fd2) < 1e-6);
  }
}

TEST_CASE("W continuity across the removable-point guard") {
  for (double n : {0.0, 1.0, 3.0}) {
    for (double r : {0.49, 0.51}) {
      const cplx s = cplx(-4 * n, 0) + std::polar(r, 0.7);
      const cplx a = eval_W(s * (1 - 1e-9)), b = eval_W(s * (1 + 1e-9));
      CHECK(std::abs(a - b) < 1e-7);
    }
  }
}

TEST_CASE("W asymptote") {
  CHECK(asymptote_check({1, 100}) <= 0.05);
  CHECK(asymptote_check({0.5, 1000}) <= 0.005);
  CHECK(asymptote_check({1.9, 50}) <= 0.1);
  for (double v : {50.0, 200.0, 3000.0, 1e4})
    for (double c : {0.1, 1.0, 1.9}) CHECK(asymptote_check({c, v}) <= 5.0 / std::abs(cplx(c, v)));
}

TEST_CASE("W residues by circle quadrature") {
  const auto r4 = integrate_circle([](cplx s) { return eval_W(s); }, 4.0, 0.1);
  const auto rm2 = integrate_circle([](cplx s) { return eval_W(s); }, -2.0, 0.1);
  CHECK(std::abs(std::abs(r4.value) - 4) < 1e-6);
  CHECK(std::abs(std::abs(rm2.value) - 4) < 1e-6);
  CHECK(r4.value.real() < 0);
  CHECK(rm2.value.real() > 0);
}

TEST_CASE("W roots") {
  const auto t = locate_W_roots(3);
  REQUIRE(t.w_zeros_pos.size() == 3);
  CHECK(t.w_zeros_pos[0] > 7);
  CHECK(t.w_zeros_pos[0] < 8);
  CHECK(std::abs(t.w_zeros_pos[0] - 7.04573457957776105) < 1e-9);
  for (size_t n = 0; n < t.w_zeros_pos.size(); ++n) {
    const double lo = 4.0 * (n + 2) - 1;
    CHECK(t.w_zeros_pos[n] > lo);
    CHECK(t.w_zeros_pos[n] < lo + 1);
    CHECK(std::abs(eval_W(t.w_zeros_pos[n])) <= 1e-9);
    CHECK(std::abs(t.w_zeros_neg[n] - (2 - t.w_zeros_pos[n])) < 1e-9);
    CHECK(std::abs(eval_W(t.w_zeros_neg[n])) <= 1e-9);
  }
  CHECK(t.trivial_zeros == std::vector<double>{0.0, 2.0});
  // The interval (-2,-1) has no sign change.
  CHECK_THROWS_AS(find_root_real([](double x) { return eval_W(x).real(); }, -1.999, -1.001, 1e-10),
                  BracketError);
}
