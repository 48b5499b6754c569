#include "incmgf/specfun.hpp"

#include <math.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "incmgf/errors.hpp"
#include "log_sum.hpp"

namespace incmgf {

void AccuracyBudget::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_terms < 1) {
    throw DomainError("AccuracyBudget requires rel_tol > 0, abs_tol >= 0, max_terms >= 1");
  }
}

namespace specfun {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209;
constexpr double kLogMax = 709.78;

[[noreturn]] void fail_terms(const char* fn, double p0, double p1, std::int64_t terms) {
  std::ostringstream os;
  os << fn << "(" << p0 << ", " << p1 << "): no convergence within " << terms << " terms";
  throw AccuracyError(os.str());
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Inner kernels converge to roundoff unless the caller asks for less.
double term_tol(const AccuracyBudget& acc) { return std::min(acc.rel_tol * 1e-3, 0.5 * kEps); }

// Series part of P(a, x): returns log P.
double log_p_series(double a, double x, const AccuracyBudget& acc) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (std::int64_t n = 0; n < acc.max_terms; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * term_tol(acc)) {
      return std::log(sum) - x + a * std::log(x) - log_gamma(a);
    }
  }
  fail_terms("reg_lower_gamma", a, x, acc.max_terms);
}

// Continued fraction for Q(a, x) (modified Lentz): returns log Q.
double log_q_fraction(double a, double x, const AccuracyBudget& acc) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (std::int64_t i = 1; i < acc.max_terms; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < term_tol(acc)) {
      return std::log(h) - x + a * std::log(x) - log_gamma(a);
    }
  }
  fail_terms("reg_upper_gamma", a, x, acc.max_terms);
}

// Sums a positive series whose term ratio t(n+1)/t(n) = ratio(n) is decreasing in n,
// starting from the largest term. Returns log of the sum.
template <class Ratio>
double log_peak_series(double log_peak, std::int64_t n_peak, Ratio ratio, const AccuracyBudget& acc,
                       const char* fn, double p0, double p1) {
  const double tol = term_tol(acc);
  double sum = 1.0;
  double comp = 0.0;
  auto add = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  std::int64_t used = 0;
  double term = 1.0;
  for (std::int64_t n = n_peak; n > 0; --n) {
    term /= ratio(static_cast<double>(n - 1));
    add(term);
    if (term < tol * sum) break;
    if (++used > acc.max_terms) fail_terms(fn, p0, p1, acc.max_terms);
  }
  term = 1.0;
  for (std::int64_t n = n_peak;; ++n) {
    const double r = ratio(static_cast<double>(n));
    term *= r;
    add(term);
    if (r < 1.0 && term * r / (1.0 - r) < tol * sum) break;
    if (++used > acc.max_terms) fail_terms(fn, p0, p1, acc.max_terms);
  }
  return log_peak + std::log(sum - comp);
}

// Smallest nonnegative integer n where the decreasing ratio (n+p)(n+q)... crosses one,
// from the positive root of n^2 + bn + c = 0.
std::int64_t peak_index(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return 0;
  const double root = 0.5 * (-b + std::sqrt(disc));
  if (!(root > 0.0)) return 0;
  return static_cast<std::int64_t>(std::floor(root)) + 1;
}

}  // namespace

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_pochhammer(double a, double n) { return log_gamma(a + n) - log_gamma(a); }

double log_reg_lower_gamma(double a, double x, const AccuracyBudget& acc) {
  if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("reg_lower_gamma requires a > 0 and x >= 0");
  if (x == 0.0) return -kInf;
  if (x == kInf) return 0.0;
  if (x < a + 1.0) return log_p_series(a, x, acc);
  return std::log1p(-std::exp(log_q_fraction(a, x, acc)));
}

double log_reg_upper_gamma(double a, double x, const AccuracyBudget& acc) {
  if (!(a > 0.0) || !(x >= 0.0)) throw DomainError("reg_upper_gamma requires a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x == kInf) return -kInf;
  if (x < a + 1.0) return std::log1p(-std::exp(log_p_series(a, x, acc)));
  return log_q_fraction(a, x, acc);
}

double reg_lower_gamma(double a, double x, const AccuracyBudget& acc) {
  return std::exp(log_reg_lower_gamma(a, x, acc));
}

double reg_upper_gamma(double a, double x, const AccuracyBudget& acc) {
  return std::exp(log_reg_upper_gamma(a, x, acc));
}

double log_kummer_1f1_scaled(double a, double b, double x, const AccuracyBudget& acc) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0)) {
    throw DomainError("log_kummer_1f1_scaled requires a > 0, b > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  // t(n+1)/t(n) = (a+n) x / ((b+n)(n+1)); peak where n^2 + (b+1-x) n + (b - a x) = 0.
  auto ratio = [&](double n) { return (a + n) * x / ((b + n) * (n + 1.0)); };
  std::int64_t n0 = peak_index(b + 1.0 - x, b - a * x);
  if (n0 > 0 && ratio(static_cast<double>(n0 - 1)) < 1.0) --n0;
  const double nd = static_cast<double>(n0);
  const double log_peak =
      log_pochhammer(a, nd) - log_pochhammer(b, nd) + nd * std::log(x) - log_gamma(nd + 1.0);
  return log_peak_series(log_peak, n0, ratio, acc, "kummer_1f1", a, x) - x;
}

double kummer_1f1_scaled(double a, double b, double x, const AccuracyBudget& acc) {
  if (!(x >= 0.0)) throw DomainError("kummer_1f1_scaled requires x >= 0");
  if (a > 0.0 && b > 0.0) return std::exp(log_kummer_1f1_scaled(a, b, x, acc));
  const double v = kummer_1f1(a, b, x, acc);
  return v * std::exp(-x);
}

namespace {

double kummer_direct(double a, double b, double x, const AccuracyBudget& acc) {
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  double biggest = 1.0;
  for (std::int64_t n = 0; n < acc.max_terms; ++n) {
    const double nd = static_cast<double>(n);
    term *= (a + nd) * x / ((b + nd) * (nd + 1.0));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    biggest = std::max(biggest, std::abs(term));
    if (!std::isfinite(sum)) throw RangeError("kummer_1f1: direct series overflow");
    const double r = std::abs((a + nd + 1.0) * x / ((b + nd + 1.0) * (nd + 2.0)));
    if (term == 0.0 || (r < 1.0 && std::abs(term) * r / (1.0 - r) < term_tol(acc) * std::abs(sum))) {
      if (biggest * kEps > acc.rel_tol * std::abs(sum)) {
        std::ostringstream os;
        os << "kummer_1f1(" << a << ", " << b << ", " << x << "): cancellation exceeds accuracy budget";
        throw AccuracyError(os.str());
      }
      return sum - comp;
    }
  }
  fail_terms("kummer_1f1", a, x, acc.max_terms);
}

}  // namespace

double kummer_1f1(double a, double b, double x, const AccuracyBudget& acc) {
  if (is_nonpositive_integer(b)) throw DomainError("kummer_1f1: b is a nonpositive integer");
  if (x == 0.0 || a == 0.0) return 1.0;
  if (x > 0.0 && a > 0.0 && b > 0.0) {
    const double l = log_kummer_1f1_scaled(a, b, x, acc) + x;
    if (l > kLogMax) {
      std::ostringstream os;
      os << "kummer_1f1(" << a << ", " << b << ", " << x << ") overflows double (log value " << l << ")";
      throw RangeError(os.str());
    }
    return std::exp(l);
  }
  if (x < 0.0 && b > 0.0 && !is_nonpositive_integer(a)) {
    // Kummer transformation: 1F1(a; b; x) = exp(x) 1F1(b - a; b; -x).
    if (b - a > 0.0) return std::exp(log_kummer_1f1_scaled(b - a, b, -x, acc));
    if (b - a == 0.0) return std::exp(x);
    return std::exp(x) * kummer_direct(b - a, b, -x, acc);
  }
  return kummer_direct(a, b, x, acc);
}

namespace {

// log of sum_n Poisson(n; lambda) T(nu + n, x) where T is P (lower) or Q (upper).
double log_poisson_gamma_mix(double nu, double lambda, double x, bool lower, const AccuracyBudget& acc) {
  auto log_t = [&](double shape) {
    return lower ? log_reg_lower_gamma(shape, x, acc) : log_reg_upper_gamma(shape, x, acc);
  };
  if (lambda == 0.0) return log_t(nu);
  const double log_lambda = std::log(lambda);
  auto log_w = [&](double n) { return -lambda + n * log_lambda - log_gamma(n + 1.0); };
  const double tol = term_tol(acc);
  const auto n0 = static_cast<std::int64_t>(std::floor(lambda));
  detail::LogSum sum;
  std::int64_t used = 0;
  for (std::int64_t n = n0; n >= 0; --n) {
    const double nd = static_cast<double>(n);
    const double lw = log_w(nd);
    const double lt = log_t(nu + nd);
    sum.add(lw + lt);
    // Poisson weights decay geometrically below the mode, ratio n / lambda.
    const double q = nd / lambda;
    const double bound = lower ? lw : lw + lt;
    if (q < 1.0 && sum.relative(bound) * q / (1.0 - q) < tol) break;
    if (++used > acc.max_terms) fail_terms("marcum", nu, lambda, acc.max_terms);
  }
  for (std::int64_t n = n0 + 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double lw = log_w(nd);
    const double lt = log_t(nu + nd);
    sum.add(lw + lt);
    double q = lambda / (nd + 1.0);
    if (lower) q *= std::min(1.0, x / (nu + nd + 1.0));
    const double bound = lower ? lw + lt : lw;
    if (q < 1.0 && sum.relative(bound) * q / (1.0 - q) < tol) break;
    if (++used > acc.max_terms) fail_terms("marcum", nu, lambda, acc.max_terms);
  }
  return sum.log_abs();
}

void check_marcum_args(double nu, double a, double b) {
  if (!(nu > 0.0) || !(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a)) {
    throw DomainError("marcum_q requires nu > 0, a >= 0 (finite), b >= 0");
  }
}

}  // namespace

double log_marcum_p(double nu, double a, double b, const AccuracyBudget& acc) {
  check_marcum_args(nu, a, b);
  if (b == 0.0) return -kInf;
  const double lambda = 0.5 * a * a;
  const double x = 0.5 * b * b;
  if (x < nu + lambda) return log_poisson_gamma_mix(nu, lambda, x, true, acc);
  return std::log1p(-std::exp(log_poisson_gamma_mix(nu, lambda, x, false, acc)));
}

double marcum_p(double nu, double a, double b, const AccuracyBudget& acc) {
  return std::exp(log_marcum_p(nu, a, b, acc));
}

double marcum_q(double nu, double a, double b, const AccuracyBudget& acc) {
  check_marcum_args(nu, a, b);
  if (b == 0.0) return 1.0;
  const double lambda = 0.5 * a * a;
  const double x = 0.5 * b * b;
  if (x < nu + lambda) return -std::expm1(log_poisson_gamma_mix(nu, lambda, x, true, acc));
  return std::exp(log_poisson_gamma_mix(nu, lambda, x, false, acc));
}

namespace {

// sum_j (b2)_j y^j / (j! (c)_j) * K_j with K_j = exp(-x) 1F1(alpha; c + j; x), x >= 0, y >= 0.
// Returns the signed log-sum. When alpha == 1 the inner Kummer function is an
// incomplete gamma ratio and the j-th term is Gamma(c) x^{1-c} (b2)_j/j! (y/x)^j P(c-1+j, x).
detail::LogSum phi2_positive_sum(double alpha, double b2, double c, double x, double y,
                                 const AccuracyBudget& acc) {
  detail::LogSum sum;
  const bool gamma_form = alpha == 1.0 && c > 1.0 && x > 0.0;
  const double tol = term_tol(acc);
  double log_coef = 0.0;  // log |(b2)_j / j!|
  int sign = 1;
  double log_c_poch = 0.0;  // log (c)_j
  const double log_x = std::log(x);
  const double log_y = y > 0.0 ? std::log(y) : -kInf;
  for (std::int64_t j = 0; j < acc.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    if (j > 0) {
      const double f = b2 + jd - 1.0;
      if (f == 0.0) return sum;  // (b2)_j vanishes from here on
      if (f < 0.0) sign = -sign;
      log_coef += std::log(std::abs(f)) - std::log(jd);
      log_c_poch += std::log(c + jd - 1.0);
    }
    double log_term;
    if (gamma_form) {
      log_term = log_gamma(c) + (1.0 - c) * log_x + log_coef + (j > 0 ? jd * (log_y - log_x) : 0.0) +
                 log_reg_lower_gamma(c - 1.0 + jd, x, acc);
    } else {
      double log_k;
      int k_sign = 1;
      if (alpha > 0.0) {
        log_k = log_kummer_1f1_scaled(alpha, c + jd, x, acc);
      } else {
        const double k = kummer_1f1_scaled(alpha, c + jd, x, acc);
        k_sign = k < 0.0 ? -1 : 1;
        log_k = std::log(std::abs(k));
      }
      log_term = log_coef + (j > 0 ? jd * log_y : 0.0) - log_c_poch + log_k;
      if (k_sign < 0) {
        sum.add(log_term, -sign);
        goto bound;
      }
    }
    sum.add(log_term, sign);
  bound:
    if (y == 0.0) return sum;
    {
      const double growth = std::max(1.0, std::abs(b2 + jd) / (jd + 1.0));
      const double q = gamma_form ? growth * y * std::min(1.0 / x, 1.0 / (c + jd))
                                  : growth * y / (c + jd);
      if (j > 0 && q < 1.0 && sum.relative(log_term) * q / (1.0 - q) < tol) return sum;
    }
  }
  fail_terms("phi2", c, y, acc.max_terms);
}

}  // namespace

namespace {

SignedLog log_kummer(double a, double b, double x, const AccuracyBudget& acc) {
  if (x == 0.0 || a == 0.0) return {0.0, 1};
  if (x > 0.0 && a > 0.0 && b > 0.0) return {log_kummer_1f1_scaled(a, b, x, acc) + x, 1};
  if (x < 0.0 && b > 0.0 && b - a > 0.0 && !is_nonpositive_integer(a)) {
    // 1F1(a; b; x) = exp(x) 1F1(b - a; b; -x), and the scaled form absorbs exp(x).
    return {log_kummer_1f1_scaled(b - a, b, -x, acc), 1};
  }
  const double v = kummer_1f1(a, b, x, acc);
  return {std::log(std::abs(v)), v < 0.0 ? -1 : 1};
}

}  // namespace

SignedLog log_phi2(const Phi2Args& args, const AccuracyBudget& acc) {
  acc.validate();
  double b1 = args.b1, b2 = args.b2, x = args.x, y = args.y;
  const double c = args.c;
  if (!(c > 0.0)) throw DomainError("phi2 requires c > 0");
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("phi2 requires finite arguments");
  if (x == 0.0 && y == 0.0) return {0.0, 1};
  if (y == 0.0 || b2 == 0.0) return log_kummer(b1, c, x, acc);
  if (x == 0.0 || b1 == 0.0) return log_kummer(b2, c, y, acc);
  if (x == y) return log_kummer(b1 + b2, c, x, acc);
  // Order so that x is the smaller argument.
  if (y < x) {
    std::swap(b1, b2);
    std::swap(x, y);
  }
  if (x < 0.0) {
    // Phi2(b1, b2; c; x, y) = exp(x) Phi2(c - b1 - b2, b2; c; -x, y - x): nonnegative arguments.
    // The exp(x) factor cancels the exp(-X) scaling carried by each summand.
    const auto s = phi2_positive_sum(c - b1 - b2, b2, c, -x, y - x, acc);
    return {s.log_abs(), s.sign()};
  }
  // Both arguments positive: sum_j (b2)_j y^j / (j! (c)_j) 1F1(b1; c + j; x).
  const auto s = phi2_positive_sum(b1, b2, c, x, y, acc);
  return {s.log_abs() + x, s.sign()};
}

double phi2(const Phi2Args& args, const AccuracyBudget& acc) {
  const SignedLog v = log_phi2(args, acc);
  if (v.log_abs > kLogMax) throw RangeError("phi2 overflows double");
  return v.sign * std::exp(v.log_abs);
}

double phi3(const Phi3Args& args, const AccuracyBudget& acc) {
  acc.validate();
  const double b = args.b, c = args.c, x = args.x, y = args.y;
  if (!(c > 0.0)) throw DomainError("phi3 requires c > 0");
  if (x == 0.0 && y == 0.0) return 1.0;
  // Phi3(b; c; x, y) = sum_j y^j / (j! (c)_j) 1F1(b; c + j; x).
  double sum = 0.0;
  double comp = 0.0;
  double coef = 1.0;
  int small_run = 0;
  for (std::int64_t j = 0; j < acc.max_terms; ++j) {
    const double jd = static_cast<double>(j);
    if (j > 0) coef *= y / (jd * (c + jd - 1.0));
    const double term = coef * kummer_1f1(b, c + jd, x, acc);
    const double yy = term - comp;
    const double t = sum + yy;
    comp = (t - sum) - yy;
    sum = t;
    if (!std::isfinite(sum)) throw RangeError("phi3 overflows double");
    const double q = std::abs(y) / ((jd + 1.0) * (c + jd));
    if (y == 0.0) break;
    if (q < 0.5 && std::abs(term) < term_tol(acc) * std::abs(sum)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    if (j + 1 == acc.max_terms) fail_terms("phi3", c, y, acc.max_terms);
  }
  return sum - comp;
}

double exp_integral_e1_scaled(double x, const AccuracyBudget& acc) {
  if (!(x > 0.0)) throw DomainError("exp_integral_e1_scaled requires x > 0");
  if (x == kInf) return 0.0;
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;
    for (std::int64_t n = 1; n < acc.max_terms; ++n) {
      const double nd = static_cast<double>(n);
      term *= -x / nd;
      const double contrib = term / nd;
      sum += contrib;
      if (std::abs(contrib) < kEps * 1e-2) {
        return std::exp(x) * (-kEulerGamma - std::log(x) - sum);
      }
    }
    fail_terms("exp_integral_e1", x, 0.0, acc.max_terms);
  }
  // Continued fraction (modified Lentz) for exp(x) E1(x).
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (std::int64_t i = 1; i < acc.max_terms; ++i) {
    const double an = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  fail_terms("exp_integral_e1", x, 0.0, acc.max_terms);
}

double exp_integral_ei(double x, const AccuracyBudget& acc) {
  if (x == 0.0) throw RangeError("exp_integral_ei: logarithmic singularity at x = 0");
  if (std::isnan(x)) throw DomainError("exp_integral_ei: NaN argument");
  if (x < 0.0) {
    const double e1s = exp_integral_e1_scaled(-x, acc);
    return -e1s * std::exp(x);
  }
  if (x <= 40.0) {
    double sum = 0.0;
    double term = 1.0;
    for (std::int64_t n = 1; n < acc.max_terms; ++n) {
      const double nd = static_cast<double>(n);
      term *= x / nd;
      sum += term / nd;
      if (term / nd < kEps * 1e-2 * sum) return kEulerGamma + std::log(x) + sum;
    }
    fail_terms("exp_integral_ei", x, 0.0, acc.max_terms);
  }
  if (x > kLogMax) throw RangeError("exp_integral_ei overflows double");
  // Asymptotic series exp(x)/x sum n!/x^n, truncated at its smallest term.
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    const double next = term * n / x;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < kEps * 1e-2 * sum) break;
  }
  return std::exp(x) / x * sum;
}

double log_bessel_i(double nu, double z, const AccuracyBudget& acc) {
  if (!(nu > -1.0) || !(z >= 0.0)) throw DomainError("log_bessel_i requires nu > -1, z >= 0");
  if (z == 0.0) return nu == 0.0 ? 0.0 : -kInf;
  // t(k) = (z/2)^(2k+nu) / (k! Gamma(k+nu+1)); t(k+1)/t(k) = (z/2)^2 / ((k+1)(k+nu+1)).
  const double h2 = 0.25 * z * z;
  auto ratio = [&](double k) { return h2 / ((k + 1.0) * (k + nu + 1.0)); };
  std::int64_t k0 = peak_index(nu + 2.0, nu + 1.0 - h2);
  if (k0 > 0 && ratio(static_cast<double>(k0 - 1)) < 1.0) --k0;
  const double kd = static_cast<double>(k0);
  const double log_peak =
      (2.0 * kd + nu) * std::log(0.5 * z) - log_gamma(kd + 1.0) - log_gamma(kd + nu + 1.0);
  return log_peak_series(log_peak, k0, ratio, acc, "bessel_i", nu, z);
}

}  // namespace specfun
}  // namespace incmgf
