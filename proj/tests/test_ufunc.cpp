#include <doctest.h>

#include <cmath>

#include "wavekin/bfunc.hpp"
#include "wavekin/data.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/ufunc.hpp"

using namespace wavekin;

TEST_CASE("initial value") {
  CHECK(eval_U(0.0, cplx(1.3, 4)).value == cplx(1.0 / kSqrt2Pi));
  CHECK(eval_U_small_t(0.0, 0.7).value == cplx(1.0 / kSqrt2Pi));
  CHECK(std::abs(eval_U(1e-6, 1.0).value - 0.3989422804014327) < 1e-9);
  CHECK(std::abs(1.0 / kSqrt2Pi - 0.3989423) < 1e-7);
}

TEST_CASE("contour independence") {
  const cplx a = eval_U(0.3, 1.2, 1.6).value, b = eval_U(0.3, 1.2, 1.9).value;
  CHECK(std::abs(a - b) < 1e-8);
  const cplx s(0.8, -3.0);
  CHECK(std::abs(eval_U(0.7, s, 1.0).value - eval_U(0.7, s, 1.7).value) < 1e-8);
  CHECK_THROWS_AS(eval_U(0.3, 1.2, 1.1), DomainError);
  CHECK_THROWS_AS(eval_U(0.3, cplx(2.0, 0)), DomainError);
}

TEST_CASE("small-time representation") {
  for (auto [t, s] : {std::pair{0.2, cplx(1.5, 0)}, std::pair{0.04, cplx(0.6, 2.0)}, std::pair{0.1, cplx(1.8, -1.0)}})
    CHECK(std::abs(eval_U_small_t(t, s).value - eval_U(t, s).value) < 1e-8);
  // Contour left of two Gamma poles.
  CHECK(std::abs(eval_U_small_t(0.2, 1.5, 0.3).value - eval_U(0.2, 1.5).value) < 1e-8);
  const double C = frozen_constant("C_U_small");
  CHECK(std::abs(eval_U_small_t(0.01, 1.0, 0.5).value - 1.0 / kSqrt2Pi) <= C * std::sqrt(0.01));
}

TEST_CASE("s-derivative") {
  const cplx s(1.0, 2.0);
  const double e = 1e-5;
  const cplx fd = (eval_U(0.3, s + e).value - eval_U(0.3, s - e).value) / (2 * e);
  const cplx d = eval_dU_ds(0.3, s);
  CHECK(std::abs(d - fd) < 1e-6 * std::abs(d));
  CHECK(std::abs(eval_dU_ds(1e-9, s)) < 1e-6);
  CHECK(eval_dU_ds(0.0, s) == cplx(0.0));
  const cplx s30(1.0, 30.0);
  CHECK((1 + std::abs(s30)) * std::abs(eval_dU_ds(0.2, s30)) <=
        frozen_constant("C_T_dU") * 0.2 * U_envelope(0.2, s30));
}

TEST_CASE("time derivative obeys the shift equation") {
  CHECK(check_U_ode(0.5, 1.5, 1e-4) <= 1e-6);
  CHECK(check_U_ode(2.0, cplx(1.2, 5.0), 1e-4) <= 1e-6);
  CHECK(check_U_ode(0.5, 1.5, 2e-3) < check_U_ode(0.5, 1.5, 4e-3));
  const cplx s(1.4, 0.7);
  CHECK(std::abs(eval_dU_dt(0.6, s) - eval_W(s - 1.0) * eval_U(0.6, s - 1.0).value) < 1e-9);
}

TEST_CASE("Laplace-side function") {
  CHECK(V_functional_residual(1.0, 1.5) <= 1e-7);
  CHECK(V_functional_residual(cplx(2, 3), 1.2) <= 1e-7);
  CHECK(V_functional_residual(cplx(0.1, -5), cplx(1.7, 3)) <= 1e-7);
  CHECK(std::abs(eval_V(cplx(2, 3), 1.2, 1.5) - eval_V(cplx(2, 3), 1.2, 2.0)) < 1e-10);
  CHECK_THROWS_AS(eval_V(cplx(-1, 0.5), 1.2), DomainError);
  const cplx s(1.2, 1.0);
  const cplx u = eval_U(1.0, s).value;
  for (double d : {0.3, 0.5, 0.7}) CHECK(std::abs(invert_V(1.0, s, d) - u) < 1e-5);
}

TEST_CASE("envelopes") {
  const double CT = frozen_constant("C_T_U");
  for (int i = 0; i < 10; ++i) {
    const double t = 0.1 + 0.1 * i;
    for (int k = 0; k < 10; ++k) {
      const cplx s(1.0, std::round(5 * std::pow(40.0, k / 9.0) / 0.05) * 0.05);
      if (k % 3 == 0 && i % 3 == 0) CHECK(std::abs(eval_U(t, s).value) <= CT * U_envelope(t, s));
    }
  }
  const cplx s(1.0, 20.0);
  CHECK(std::abs(eval_U(1.0, s).value) <= frozen_constant("C_U_s10") * U_envelope(1.0, s));
}

TEST_CASE("tables match pointwise evaluation") {
  const auto T = make_U_table(0.4, 1.0, 0.05, -400, 400, 1.5, true);
  for (long j : {-400L, -7L, 0L, 123L, 400L}) {
    const cplx s(1.0, j * 0.05);
    CHECK(std::abs(T.U[T.idx(j)] - eval_U(0.4, s).value) < 1e-12);
    CHECK(std::abs(T.dUds[T.idx(j)] - eval_dU_ds(0.4, s)) < 1e-11);
    CHECK(std::abs(T.dUdt[T.idx(j)] - eval_dU_dt(0.4, s)) < 1e-11);
  }
  const auto T2 = make_U_table(2.5, 0.6, 0.05, -100, 100, 1.3, false);
  CHECK(std::abs(T2.U[T2.idx(31)] - eval_U(2.5, cplx(0.6, 31 * 0.05)).value) < 1e-12);
}
