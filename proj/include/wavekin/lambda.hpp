#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wavekin {

enum class Regime { direct, log_regularized, large_t_asymptotic, small_t_series, near_one_scaling, automatic };

const char* regime_name(Regime r);
Regime parse_regime(const std::string& name);

struct LambdaQuery {
  double t = 0, x = 0;
  Regime regime = Regime::automatic;
};

struct LambdaValue {
  double value = 0, err = 0;
  Regime regime = Regime::automatic;
};

// Lambda is the inverse Mellin transform of sqrt(2pi) U(t, .), so Lambda(0+) = delta_1.
Regime resolve_regime(double t, double X);
LambdaValue eval_lambda(const LambdaQuery& q);
double eval_lambda(double t, double x);
// Same with X = log x given directly (resolves points closer to x = 1 than double spacing).
LambdaValue eval_lambda_logx(double t, double X, Regime regime = Regime::automatic);

// Lambda = t^-3 Q1(x/t) + Q2(t, x/t) for t > 1.
double eval_Q1(double theta);
double Q1_limit_zero();  // -2 c1 B(1)/W'(0)
double eval_Q2(double t, double theta);

// sum_{k=1}^{n} t^k/k! g_k(x) with g_k = L^k delta_1 off the diagonal; x > 1, n <= 6.
double eval_lambda_series(double t, double x, int n_terms);
double series_coefficient(int k, double x);
// (1/2 pi i) \int_{Re w = 1} t^{-w}/B(w) dw and its residue expansion sum rho(-n) t^n.
double eval_mu(double t);
double eval_mu_series(double t, int n_max);

double eval_dlambda_dt(double t, double x);
double eval_dlambda_dx(double t, double x);

double eval_G(double t, double x, double y);
double G_abs_integral(double t, double x);
double l1_norm_lambda(double t);
double Q2_abs_integral(double t);

using TestFn = std::function<double(double)>;
// <Lambda(t), phi> for phi supported in [lo, hi].
double delta_pairing(double t, const TestFn& phi, double lo, double hi);

// Adjoint generator (2/y) \int k(eta) (phi(y e^-eta) - phi(y)) d eta for phi supported in [lo, hi].
double adjoint_generator(const TestFn& phi, double lo, double hi, double y);

struct WeakResidual {
  double residual = 0, scale = 0;
};
// \int\int Lambda (a'(t) b(x) + a(t) L*b(x)) dx dt with a a bump on (t1, t2), b a bump on (lo, hi).
WeakResidual weak_equation_residual(double t1, double t2, double lo, double hi);

std::vector<LambdaValue> lambda_profile(double t, const std::vector<double>& x, Regime regime = Regime::automatic);

// Smooth bump exp(-1/(1-u^2)) on (lo, hi), scaled to 1 at the centre.
double bump(double x, double lo, double hi);

}  // namespace wavekin
