#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "wavekin/bfunc.hpp"
#include "wavekin/errors.hpp"

using namespace wavekin;

TEST_CASE("B at anchor points") {
  CHECK(std::abs(eval_B(1.0) - 1.64620722503989) < 1e-11);
  CHECK(std::abs(eval_B(1.5) - 1.0) < 1e-12);
  CHECK(std::abs(eval_B(3.0)) < 1e-8 * std::abs(eval_B(2.999)));
  CHECK(std::abs(eval_B(4.0)) < 1e-8 * std::abs(eval_B(3.999)));
  CHECK(std::abs(eval_B(-6.0)) < 1e-8 * std::abs(eval_B(-5.999)));
  CHECK(std::isfinite(std::abs(eval_B(5.0))));
  CHECK(std::abs(eval_B(5.0)) > 1.0);
}

TEST_CASE("functional equation on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(1.0, 2.0), im(-30.0, 30.0);
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx b = eval_B_strip(s);
    const cplx r = b + eval_W(s - 1.0) * eval_B_strip(s - 1.0);
    CHECK(std::abs(r) <= 1e-8 * std::abs(b));
  }
  const cplx a = eval_B(cplx(1.5, 0)), c = -eval_W(0.5) * eval_B(0.5);
  CHECK(std::abs(a - c) < 1e-8 * std::abs(a));
}

TEST_CASE("continuation matches the defining relation away from the strip") {
  for (cplx s : {cplx(3.3, 0.4), cplx(6.2, -1.0), cplx(-2.4, 0.7), cplx(-7.3, 2.0)}) {
    const cplx r = eval_B(s) + eval_W(s - 1.0) * eval_B(s - 1.0);
    CHECK(std::abs(r) <= 1e-9 * std::abs(eval_B(s)));
  }
}

TEST_CASE("representation independence") {
  for (cplx s : {cplx(1.3, 2.0), cplx(1.3, -40.0), cplx(0.9, 7.0)}) {
    const double a = s.real();
    const cplx b1 = eval_B_strip(s, std::max(0.05, a - 0.85));
    const cplx b2 = eval_B_strip(s, std::min(1.45, a - 0.1) == 0.5 ? 0.45 : std::min(1.45, a - 0.1));
    CHECK(std::abs(b1 - b2) < 1e-9 * std::abs(b1));
  }
  const cplx h1 = eval_B_strip(0.5, 0.2), h2 = eval_B_strip(0.5, 0.3);
  CHECK(std::abs(h1 - h2) < 1e-9 * std::abs(h1));
  CHECK_THROWS_AS(eval_B_strip(cplx(2.5, 0)), DomainError);
  CHECK_THROWS_AS(eval_B_strip(cplx(1.2, 0), 0.1), DomainError);
}

TEST_CASE("strip bound and approach to one") {
  double prev = 10;
  for (double v : {5.0, 20.0, 80.0, 200.0, 500.0}) {
    const double m = std::abs(eval_B(cplx(1.0, v)));
    CHECK(m >= 0.2);
    CHECK(m <= 5.0);
    CHECK(std::abs(m - 1.0) <= prev + 1e-12);
    prev = std::abs(m - 1.0);
  }
}

TEST_CASE("modulus on vertical lines follows a power of log") {
  for (double a : {0.5, 1.0, 1.5, 1.7})
    for (double v : {500.0, 5000.0}) {
      const double r = std::abs(eval_B(cplx(a, v))) * std::pow(2 * std::log(v), 1.5 - a);
      CHECK(std::abs(r - 1.0) < 0.03);
    }
}

TEST_CASE("logarithmic growth right of the strip") {
  double lo = 1e300, hi = 0;
  for (double v = 10; v <= 1000; v *= 1.6) {
    const double r = std::abs(eval_B(cplx(2.5, v))) / std::log(v);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo > 0.1);
  CHECK(hi < 10.0);
  CHECK(hi / lo < 4.0);
}

TEST_CASE("poles are refused") {
  CHECK_THROWS_AS(eval_B(0.0), PoleError);
  CHECK_THROWS_AS(eval_B(-1.0), PoleError);
  CHECK_THROWS_AS(eval_B(9.0), PoleError);
  CHECK_THROWS_AS(eval_B(cplx(10.0, 1e-8)), PoleError);
  const double sneg = 2.0 - locate_W_roots(2).w_zeros_pos[0];
  CHECK_THROWS_AS(eval_B(sneg), PoleError);
  CHECK_THROWS_AS(eval_B(sneg - 1.0), PoleError);
  CHECK(std::abs(residue_B(9.0)) > 1e-3);
  CHECK(std::abs(residue_B(0.0)) > 1e-3);
  CHECK(std::abs(residue_B(5.0)) < 1e-10);
}

TEST_CASE("residues of 1/B") {
  const auto& L = derived_constants();
  const cplx chain = 1.0 / (L.B1 * L.W1 * L.Wp2);
  CHECK(std::abs(residue_inv_B(3.0) - chain) < 1e-7 * std::abs(chain));
  CHECK(std::abs(L.rho4) > 1e-3);
  CHECK(std::abs(residue_inv_B(3.5)) < 1e-10);
  // Circle residue equals the reciprocal of the derivative.
  CHECK(std::abs(L.rho4 * eval_B_prime(4.0) - 1.0) < 1e-8);
}

TEST_CASE("derived constants") {
  const auto& L = derived_constants();
  CHECK(std::isfinite(std::abs(L.c1)));
  CHECK(std::abs(L.c1) > 0);
  CHECK(std::abs(L.c1 + 1.0 / (L.B1 * L.W1 * L.Wp2)) < 1e-12 * std::abs(L.c1));
  CHECK(std::abs(L.c3 / L.rho4 - L.B5 / kSqrt2Pi) < 1e-12);
  REQUIRE(L.P.size() == 6);
  CHECK(std::abs(L.Q[0]) < 1e-12);
  for (std::size_t n = 0; n < 6; ++n) CHECK(std::abs(L.Q[n] + double(n) * L.P[n]) < 1e-8 * (1 + std::abs(L.Q[n])));
}

TEST_CASE("log-derivative") {
  for (cplx s : {cplx(1.0, 0.0), cplx(1.2, 3.0), cplx(0.7, -11.0)}) {
    const cplx d = dlog_B_strip(s);
    const cplx ref = eval_B_prime(s) / eval_B(s);
    CHECK(std::abs(d - ref) < 1e-9 * (1 + std::abs(ref)));
  }
}

TEST_CASE("line tables agree with adaptive evaluation") {
  for (double c : {1.0, 0.6, 2.3, -0.6}) {
    const auto L = make_B_line(c, 0.05, -300, 300, true);
    for (long j : {-300L, -41L, 0L, 17L, 300L}) {
      const cplx s(c, j * 0.05);
      const cplx ref = eval_B(s);
      CHECK(std::abs(L.B(j) - ref) < 1e-11 * std::abs(ref));
    }
  }
  const auto a = cached_B_line(1.0, 0.1, -10, 10, false);
  const auto b = cached_B_line(1.0, 0.1, -5, 5, false);
  CHECK(a.get() == b.get());
}

TEST_CASE("cache persistence") {
  bcache_clear();
  const cplx v = eval_B_strip(cplx(1.1, 0.3));
  CHECK(bcache_stats().misses >= 1);
  const auto path = std::filesystem::temp_directory_path() / "wavekin_bcache_test.bin";
  CHECK(bcache_save(path.string()) == bcache_stats().entries);
  CHECK(std::filesystem::file_size(path) == 48 * bcache_stats().entries);
  bcache_clear();
  CHECK(bcache_load(path.string()) >= 1);
  CHECK(eval_B_strip(cplx(1.1, 0.3)) == v);
  CHECK(bcache_stats().hits >= 1);
  bcache_enable(false);
  const cplx w = eval_B_strip(cplx(1.1, 0.3));
  bcache_enable(true);
  CHECK(std::abs(w - v) < 1e-9 * std::abs(v));
  std::filesystem::remove(path);
}
