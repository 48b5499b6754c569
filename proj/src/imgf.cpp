#include "incmgf/imgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "incmgf/errors.hpp"
#include "log_sum.hpp"

namespace incmgf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using specfun::log_gamma;

struct Canon {
  double kappa;
  double mu;
  double m;
  double a;
  double rho;

  double b() const { return a * rho; }
  bool gamma_only() const { return kappa == 0.0; }
  bool unshadowed() const { return !std::isfinite(m); }
};

Canon canon_of(const FadingModel& model) {
  const FadingModel c = canonicalize(model);
  Canon k{c.kappa, c.mu, c.m, c.mu * (1.0 + c.kappa) / c.mean_snr, 1.0};
  if (c.kappa > 0.0 && std::isfinite(c.m)) k.rho = c.m / (c.mu * c.kappa + c.m);
  return k;
}

void check_zeta(double zeta) {
  if (!(zeta >= 0.0)) throw DomainError("IMGF requires zeta >= 0");
}

void check_below_pole(const Canon& c, double s, const char* what) {
  if (!(s < c.b())) {
    std::ostringstream os;
    os << what << ": s=" << s << " is not below the smallest MGF pole " << c.b();
    throw DomainError(os.str());
  }
}

double log_lower(const Canon& c, double s, double z, const AccuracyBudget& acc) {
  if (c.gamma_only()) {
    const double mu = c.mu;
    if (s < c.a) return -mu * std::log1p(-s / c.a) + specfun::log_reg_lower_gamma(mu, (c.a - s) * z, acc);
    const double log_pow = mu * std::log(c.a * z) - log_gamma(mu + 1.0);
    if (s == c.a) return log_pow;
    const double x = (s - c.a) * z;
    return log_pow + specfun::log_kummer_1f1_scaled(mu, mu + 1.0, x, acc) + x;
  }
  if (c.unshadowed()) {
    const double d = c.a - s;
    if (!(d > 0.0)) {
      std::ostringstream os;
      os << "kappa-mu IMGF: s=" << s << " leaves the Marcum argument mu(1+kappa)/mean - s = " << d
         << " nonpositive";
      throw DomainError(os.str());
    }
    const double mu = c.mu;
    const double alpha = std::sqrt(2.0 * mu * c.kappa * c.a / d);
    const double beta = std::sqrt(2.0 * d * z);
    return -mu * std::log1p(-s / c.a) + mu * c.kappa * s / d + specfun::log_marcum_p(mu, alpha, beta, acc);
  }
  const double mu = c.mu;
  const double log_a_coef = mu * std::log(c.a) + c.m * std::log(c.rho);
  const auto phi = specfun::log_phi2({mu - c.m, c.m, mu + 1.0, (s - c.a) * z, (s - c.b()) * z}, acc);
  if (phi.sign < 0) throw AccuracyError("kappa-mu shadowed IMGF: Phi2 came out negative");
  return log_a_coef + mu * std::log(z) - log_gamma(mu + 1.0) + phi.log_abs;
}

// Each model is a mixture sum_n w_n Gamma(mu + n, rate a) (negative binomial
// weights when shadowed, Poisson when not, a single term when kappa = 0).
// Returns log of log_scale-shifted
//   sum_n w_n (a/(a-s))^(mu+n) (mu+n)_k (a-s)^(-k) T(mu+n+k, (a-s) z)
// with T = P (lower tail) or Q (upper tail).
double log_gamma_series(const Canon& c, double s, double z, int k, Tail tail, double log_scale,
                        const AccuracyBudget& acc) {
  check_below_pole(c, s, "IMGF derivative");
  const bool lower = tail == Tail::Lower;
  if (z == 0.0 && lower) return -kInf;
  if (z == kInf && !lower) return -kInf;
  const double d = c.a - s;
  const double x = d * z;
  const double log_u = -std::log1p(-s / c.a);
  const double u = std::exp(log_u);
  const double lambda = c.mu * c.kappa;
  auto log_t = [&](double shape) {
    if (z == 0.0 || z == kInf) return 0.0;
    return lower ? specfun::log_reg_lower_gamma(shape, x, acc) : specfun::log_reg_upper_gamma(shape, x, acc);
  };
  const double tol = acc.rel_tol * 1e-2;
  detail::LogSum sum;
  double log_w;
  if (c.gamma_only()) {
    log_w = 0.0;
  } else if (c.unshadowed()) {
    log_w = -lambda;
  } else {
    log_w = c.m * std::log(c.rho);
  }
  const double log_1mr = c.gamma_only() || c.unshadowed() ? 0.0 : std::log1p(-c.rho);
  for (std::int64_t n = 0; n < acc.max_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double nu = c.mu + nd;
    if (n > 0) {
      if (c.unshadowed()) {
        log_w += std::log(lambda) - std::log(nd);
      } else {
        log_w += std::log(c.m + nd - 1.0) - std::log(nd) + log_1mr;
      }
    }
    const double log_c = log_w + nu * log_u + specfun::log_pochhammer(nu, k) - k * std::log(d) + log_scale;
    const double log_term = log_c + log_t(nu + k);
    sum.add(log_term);
    if (c.gamma_only()) break;
    // Sup over j >= n of the coefficient ratio c_{j+1}/c_j.
    double wr;
    if (c.unshadowed()) {
      wr = lambda / (nd + 1.0);
    } else {
      wr = (1.0 - c.rho) * std::max(1.0, (c.m + nd) / (nd + 1.0));
    }
    const double q = wr * u * (nu + k) / nu;
    const double base = lower ? log_term : log_c;
    if (q < 1.0 && sum.relative(base) * q / (1.0 - q) < tol) return sum.log_abs();
    // Q(v + 1, x) / Q(v, x) <= 1 + x / v for v >= 1, which is far tighter than Q <= 1 when x is large.
    if (!lower && nu + k >= 1.0) {
      const double q2 = q * (1.0 + x / (nu + k));
      if (q2 < 1.0 && sum.relative(log_term) * q2 / (1.0 - q2) < tol) return sum.log_abs();
    }
    if (n + 1 == acc.max_terms) {
      std::ostringstream os;
      os << "gamma-mixture IMGF series at s=" << s << ", zeta=" << z << ", k=" << k << " did not converge in "
         << acc.max_terms << " terms";
      throw AccuracyError(os.str());
    }
  }
  return sum.log_abs();
}

}  // namespace

double imgf_lower(const FadingModel& model, double s, double zeta, const AccuracyBudget& acc) {
  acc.validate();
  check_zeta(zeta);
  if (!std::isfinite(s)) throw DomainError("IMGF requires finite s");
  const Canon c = canon_of(model);
  if (zeta == 0.0) return 0.0;
  if (zeta == kInf) {
    if (!(s < c.b())) throw RangeError("complete MGF diverges at or beyond the pole");
    return mgf(model, s);
  }
  const double l = log_lower(c, s, zeta, acc);
  if (l > 709.78) throw RangeError("lower IMGF overflows double");
  return std::exp(l);
}

double imgf_upper(const FadingModel& model, double s, double zeta, const AccuracyBudget& acc) {
  acc.validate();
  check_zeta(zeta);
  const Canon c = canon_of(model);
  check_below_pole(c, s, "upper IMGF");
  const double full = mgf(model, s);
  if (zeta == 0.0) return full;
  if (zeta == kInf) return 0.0;
  const double diff = full - std::exp(log_lower(c, s, zeta, acc));
  if (diff >= 1e-6 * full) return diff;
  // The difference has lost too many digits; sum the tail directly.
  return std::exp(log_gamma_series(c, s, zeta, 0, Tail::Upper, 0.0, acc));
}

double imgf_deriv_s(const FadingModel& model, double s, double zeta, int k, Tail tail, const AccuracyBudget& acc) {
  return scaled_imgf_deriv_s(model, s, zeta, k, tail, 0.0, acc);
}

double scaled_imgf_deriv_s(const FadingModel& model, double s, double zeta, int k, Tail tail, double log_scale,
                           const AccuracyBudget& acc) {
  acc.validate();
  check_zeta(zeta);
  if (k < 0 || k > kMaxDerivOrder) {
    std::ostringstream os;
    os << "IMGF derivative order " << k << " outside [0, " << kMaxDerivOrder << "]";
    throw DomainError(os.str());
  }
  const Canon c = canon_of(model);
  check_below_pole(c, s, "IMGF derivative");
  if (k == 0) {
    const double v = tail == Tail::Lower ? imgf_lower(model, s, zeta, acc) : imgf_upper(model, s, zeta, acc);
    if (v > 0.0 && std::isfinite(v)) {
      const double l = std::log(v) + log_scale;
      if (l > 709.78) throw RangeError("scaled IMGF overflows double");
      return std::exp(l);
    }
    if (v == 0.0 && zeta == 0.0 && tail == Tail::Lower) return 0.0;
  }
  const double l = log_gamma_series(c, s, zeta, k, tail, log_scale, acc);
  if (l > 709.78) throw RangeError("IMGF derivative overflows double");
  return std::exp(l);
}

double imgf(const FadingModel& model, const ImgfQuery& q) {
  if (q.deriv_order != 0) return imgf_deriv_s(model, q.s, q.zeta, q.deriv_order, q.tail, q.acc);
  return q.tail == Tail::Lower ? imgf_lower(model, q.s, q.zeta, q.acc) : imgf_upper(model, q.s, q.zeta, q.acc);
}

double imgf_generic(const MgfImage& mgf, double s, double zeta, const InversionConfig& cfg) {
  return imgf_lower_numeric(mgf, s, zeta, cfg);
}

double imgf_lower_eta_mu_direct(double eta, double mu, double mean_snr, double s, double zeta,
                                const AccuracyBudget& acc) {
  if (!(eta > 0.0) || !(mu > 0.0) || !(mean_snr > 0.0)) throw DomainError("eta-mu needs eta, mu, mean > 0");
  check_zeta(zeta);
  if (zeta == 0.0) return 0.0;
  const double p1 = mu * (1.0 + eta) / (eta * mean_snr);
  const double p2 = mu * (1.0 + eta) / mean_snr;
  const double log_pref = 2.0 * mu * std::log(mu) - log_gamma(2.0 * mu + 1.0) +
                          mu * std::log((1.0 + eta) * (1.0 + eta) / eta) + 2.0 * mu * std::log(zeta / mean_snr);
  const auto phi = specfun::log_phi2({mu, mu, 2.0 * mu + 1.0, (s - p1) * zeta, (s - p2) * zeta}, acc);
  return phi.sign * std::exp(log_pref + phi.log_abs);
}

}  // namespace incmgf
