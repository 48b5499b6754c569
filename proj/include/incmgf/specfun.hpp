#pragma once

// Scalar special functions used by the closed-form incomplete MGFs.
//
// Everything here is a pure function of its arguments over double precision.
// Series are summed until the accuracy budget is met; running out of terms
// raises AccuracyError instead of returning a truncated value.

#include <cstdint>

namespace incmgf {

struct AccuracyBudget {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  std::int64_t max_terms = 100000;

  void validate() const;
};

namespace specfun {

/// log Gamma(x) for x > 0 (reentrant; does not touch signgam).
double log_gamma(double x);

/// log of the Pochhammer symbol (a)_n = Gamma(a+n)/Gamma(a), for a > 0.
double log_pochhammer(double a, double n);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_lower_gamma(double a, double x, const AccuracyBudget& acc = {});
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x, const AccuracyBudget& acc = {});
/// log P(a, x) and log Q(a, x); both keep full relative accuracy deep in the tails.
double log_reg_lower_gamma(double a, double x, const AccuracyBudget& acc = {});
double log_reg_upper_gamma(double a, double x, const AccuracyBudget& acc = {});

/// Confluent hypergeometric 1F1(a; b; x). Throws RangeError on overflow.
double kummer_1f1(double a, double b, double x, const AccuracyBudget& acc = {});
/// exp(-x) * 1F1(a; b; x) for x >= 0, evaluated without forming exp(x).
double kummer_1f1_scaled(double a, double b, double x, const AccuracyBudget& acc = {});
/// log(exp(-x) * 1F1(a; b; x)) for x >= 0, a > 0, b > 0.
double log_kummer_1f1_scaled(double a, double b, double x, const AccuracyBudget& acc = {});

/// Generalized Marcum Q function Q_nu(a, b) of real order nu > 0.
double marcum_q(double nu, double a, double b, const AccuracyBudget& acc = {});
/// Complement 1 - Q_nu(a, b), summed directly so that small values keep their digits.
double marcum_p(double nu, double a, double b, const AccuracyBudget& acc = {});
/// log(1 - Q_nu(a, b)).
double log_marcum_p(double nu, double a, double b, const AccuracyBudget& acc = {});

struct Phi2Args {
  double b1;
  double b2;
  double c;
  double x;
  double y;
};

struct Phi3Args {
  double b;
  double c;
  double x;
  double y;
};

struct SignedLog {
  double log_abs;
  int sign;
};

/// Humbert confluent series Phi2(b1, b2; c; x, y) = sum (b1)_i (b2)_j / (c)_{i+j} x^i y^j / (i! j!).
double phi2(const Phi2Args& args, const AccuracyBudget& acc = {});
/// Phi2 as (log|value|, sign), for arguments where the value itself under- or overflows.
SignedLog log_phi2(const Phi2Args& args, const AccuracyBudget& acc = {});
/// Humbert confluent series Phi3(b; c; x, y) = sum (b)_i / (c)_{i+j} x^i y^j / (i! j!).
double phi3(const Phi3Args& args, const AccuracyBudget& acc = {});

/// Exponential integral Ei(x), x != 0.
double exp_integral_ei(double x, const AccuracyBudget& acc = {});
/// exp(x) * E1(x) for x > 0; note Ei(-x) = -E1(x).
double exp_integral_e1_scaled(double x, const AccuracyBudget& acc = {});

/// log I_nu(z) for nu > -1, z >= 0 (modified Bessel function of the first kind).
double log_bessel_i(double nu, double z, const AccuracyBudget& acc = {});

}  // namespace specfun
}  // namespace incmgf
