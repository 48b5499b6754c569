#include "incmgf/mixture.hpp"

#include <cmath>
#include <sstream>

#include "incmgf/errors.hpp"
#include "incmgf/specfun.hpp"

namespace incmgf {
namespace {

// Binomial coefficient with the conventions C(n, k<0) = 0 and C(n>=0, k>n) = 0.
double binom(int n, int k) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  if (n >= 0 && k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= static_cast<double>(n - k + j) / j;
  return r;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

double GammaMixture::weight_sum() const {
  double s = 0.0;
  for (const auto& t : terms) {
    if (t.shape > 0) s += t.C;
  }
  return s;
}

GammaMixture mixture_params(double kappa, int mu, int m, double mean_snr, MixtureColumn column) {
  if (mu < 1 || m < 1) throw DomainError("mixture_params needs integer mu >= 1 and m >= 1");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("mixture_params needs kappa >= 0");
  if (!(mean_snr > 0.0)) throw DomainError("mixture_params needs mean_snr > 0");
  GammaMixture mix;
  if (kappa == 0.0) {
    // Nakagami limit: the shadowed line-of-sight term vanishes.
    mix.M = 0;
    mix.terms.push_back({0, 1.0, mean_snr / mu, mu});
    return mix;
  }
  const double rho = m / (mu * kappa + m);
  const double one_minus = mu * kappa / (mu * kappa + m);
  const double omega_a = mean_snr / (mu * (1.0 + kappa));
  const double omega_b = omega_a / rho;
  bool greater = mu > m;
  if (column == MixtureColumn::MuGreaterThanM) greater = true;
  if (column == MixtureColumn::MuAtMostM) greater = false;
  if (greater && mu < m) throw DomainError("mu > m column requested with mu < m");
  if (!greater && mu > m) throw DomainError("mu <= m column requested with mu > m");
  if (!greater) {
    mix.M = m - mu + 1;  // the last row has a zero binomial weight
    for (int i = 0; i <= m - mu; ++i) {
      const double c = binom(m - mu, i) * std::pow(rho, i) * std::pow(one_minus, m - mu - i);
      mix.terms.push_back({i, c, omega_b, m - i});
    }
    return mix;
  }
  mix.M = mu;
  // Row i = 0 carries no weight in this column.
  mix.terms.push_back({0, 0.0, omega_a, mu - m + 1});
  for (int i = 1; i <= mu; ++i) {
    if (i <= mu - m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double c = sign * binom(m + i - 2, i - 1) * std::pow(rho, m) * std::pow(one_minus, -m - i + 1);
      mix.terms.push_back({i, c, omega_a, mu - m - i + 1});
    } else {
      const int e = i - mu + m - 1;
      const double sign = (e % 2 == 0) ? 1.0 : -1.0;
      const double c = sign * binom(i - 2, e) * std::pow(rho, e) * std::pow(one_minus, -i + 1);
      mix.terms.push_back({i, c, omega_b, mu - i + 1});
    }
  }
  // Alternating weights of size ((mu kappa + m) / (mu kappa))^mu cancel in the
  // sum; past this point the CDF would keep fewer than about nine digits.
  double mass = 0.0;
  for (const auto& t : mix.terms) mass += std::abs(t.C);
  if (mass > 1e6) {
    std::ostringstream os;
    os << "gamma mixture for kappa=" << kappa << ", mu=" << mu << ", m=" << m
       << " is ill-conditioned (sum |C_i| = " << mass << "); use kappa = 0 or the closed-form CDF";
    throw AccuracyError(os.str());
  }
  return mix;
}

GammaMixture mixture_for(const FadingModel& model) {
  const FadingModel c = canonicalize(model);
  if (!is_integer(c.mu)) throw DomainError("gamma mixture needs integer mu");
  if (c.kappa == 0.0) return mixture_params(0.0, static_cast<int>(c.mu), 1, c.mean_snr);
  if (!is_integer(c.m)) {
    std::ostringstream os;
    os << "gamma mixture needs integer m (got " << c.m << ")";
    throw DomainError(os.str());
  }
  return mixture_params(c.kappa, static_cast<int>(c.mu), static_cast<int>(c.m), c.mean_snr);
}

double mixture_cdf(const GammaMixture& mix, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("mixture_cdf requires gamma >= 0");
  if (gamma == 0.0) return 0.0;
  double surv = 0.0;
  for (const auto& t : mix.terms) {
    if (t.C == 0.0 || t.shape <= 0) continue;
    // e^{-x} sum_{r<n} x^r / r! = Q(n, x)
    surv += t.C * specfun::reg_upper_gamma(t.shape, gamma / t.Omega);
  }
  return 1.0 - surv;
}

}  // namespace incmgf
