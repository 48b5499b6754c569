#include "incmgf/apps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "incmgf/errors.hpp"
#include "incmgf/imgf.hpp"
#include "incmgf/mixture.hpp"
#include "incmgf/quadrature.hpp"

namespace incmgf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double checked_probability(double p, const char* what) {
  if (!(p >= -1e-8 && p <= 1.0 + 1e-8)) {
    std::ostringstream os;
    os.precision(12);
    os << what << " evaluated to " << p << ", outside [0, 1] by more than 1e-8";
    throw AccuracyError(os.str());
  }
  return std::min(1.0, std::max(0.0, p));
}

// F_b(alpha) + sum_i C_i e^{alpha beta_i} sum_{r<m_i} sum_{k<=r}
//   beta_i^r (-alpha)^{r-k} / (k! (r-k)!) d^k/ds^k M^u_b(-beta_i, alpha)
double opsc_core(const FadingModel& bob, const FadingModel& eve, double alpha, const AccuracyBudget& acc) {
  const GammaMixture mix = mixture_for(eve);
  double total = alpha > 0.0 ? imgf_lower(bob, 0.0, alpha, acc) : 0.0;
  for (const auto& term : mix.terms) {
    if (term.C == 0.0 || term.shape <= 0) continue;
    if (term.shape - 1 > kMaxDerivOrder) {
      std::ostringstream os;
      os << "eavesdropper mixture shape " << term.shape << " needs derivatives beyond order " << kMaxDerivOrder;
      throw DomainError(os.str());
    }
    const double beta = 1.0 / ((1.0 + alpha) * term.Omega);
    double inner = 0.0;
    for (int k = 0; k < term.shape; ++k) {
      const double d = scaled_imgf_deriv_s(bob, -beta, alpha, k, Tail::Upper, alpha * beta, acc);
      double w = 0.0;
      for (int r = k; r < term.shape; ++r) {
        if (r > k && alpha == 0.0) break;
        const double log_mag = r * std::log(beta) - std::lgamma(k + 1.0) - std::lgamma(r - k + 1.0) +
                               (r > k ? (r - k) * std::log(alpha) : 0.0);
        const double sign = ((r - k) % 2 == 0) ? 1.0 : -1.0;
        w += sign * std::exp(log_mag);
      }
      inner += w * d;
    }
    total += term.C * inner;
  }
  return checked_probability(total, "OPSC");
}

}  // namespace

void SecrecyScenario::validate() const {
  bob.validate();
  eve.validate();
  if (!(rate_rs >= 0.0) || !std::isfinite(rate_rs)) throw DomainError("secrecy rate R_S must be >= 0");
  if (n_eve_antennas < 1) throw DomainError("eavesdropper antenna count must be >= 1");
}

double secrecy_alpha(double rate_rs) { return std::expm1(rate_rs * std::numbers::ln2); }

FadingModel eve_after_mrc(const FadingModel& eve, int n_eve_antennas) {
  if (n_eve_antennas < 1) throw DomainError("eavesdropper antenna count must be >= 1");
  FadingModel c = canonicalize(eve);
  if (n_eve_antennas == 1) return c;
  const double n = n_eve_antennas;
  c.mu *= n;
  c.m *= n;
  c.mean_snr *= n;
  return c;
}

double opsc(const SecrecyScenario& sc, const AccuracyBudget& acc) {
  sc.validate();
  return opsc_core(sc.bob, eve_after_mrc(sc.eve, sc.n_eve_antennas), secrecy_alpha(sc.rate_rs), acc);
}

double spsc(const SecrecyScenario& sc, const AccuracyBudget& acc) {
  SecrecyScenario zero = sc;
  zero.rate_rs = 0.0;
  return opsc(zero, acc);
}

double eps_outage_capacity(const SecrecyScenario& sc, double epsilon, const AccuracyBudget& acc) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  SecrecyScenario probe = sc;
  auto f = [&](double r) {
    probe.rate_rs = r;
    return opsc(probe, acc);
  };
  if (f(0.0) > epsilon) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) <= epsilon) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw AccuracyError("eps_outage_capacity: no rate above 64 bits/s/Hz exceeds epsilon");
  }
  for (int it = 0; it < 50 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 1e-9) throw AccuracyError("eps_outage_capacity: bisection did not reach 1e-9 in R_S");
  return lo;
}

SecrecyScenario interference_as_secrecy(const FadingModel& desired, const FadingModel& interference,
                                        double gamma_th) {
  if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) throw DomainError("gamma_th must be > 0");
  SecrecyScenario sc;
  sc.bob = desired;
  sc.eve = interference;
  // g_d <= g_th + (1 + g_th) g_e with g_e = g_th g_i / (1 + g_th).
  sc.eve.mean_snr = interference.mean_snr * gamma_th / (1.0 + gamma_th);
  sc.rate_rs = std::log1p(gamma_th) / std::numbers::ln2;
  sc.n_eve_antennas = 1;
  return sc;
}

double outage_interference(const FadingModel& desired, const FadingModel& interference, double gamma_th,
                           const AccuracyBudget& acc) {
  const SecrecyScenario sc = interference_as_secrecy(desired, interference, gamma_th);
  sc.validate();
  return opsc_core(sc.bob, eve_after_mrc(sc.eve, 1), gamma_th, acc);
}

double cutoff_residual(const FadingModel& channel, double gamma0, const AccuracyBudget& acc) {
  if (!(gamma0 > 0.0)) throw DomainError("cutoff SNR must be > 0");
  const double survival = imgf_upper(channel, 0.0, gamma0, acc);
  // int_{g0}^inf f(g)/g dg = int_0^inf M^u(-t, g0) dt
  quad::QuadConfig qc;
  qc.rel_tol = 1e-12;
  const double inv_moment = quad::integrate_to_inf(
                                [&](double t) { return imgf_upper(channel, -t, gamma0, acc); }, 0.0, 1.0 / gamma0, qc)
                                .value;
  return survival / gamma0 - inv_moment - 1.0;
}

double solve_cutoff(const FadingModel& channel, const AccuracyBudget& acc) {
  double lo = 1e-9;
  double hi = 1.0;
  double g_lo = cutoff_residual(channel, lo, acc);
  double g_hi = cutoff_residual(channel, hi, acc);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    std::ostringstream os;
    os << "solve_cutoff: constraint does not change sign on [1e-9, 1] (" << g_lo << ", " << g_hi << ")";
    throw AccuracyError(os.str());
  }
  double mid = std::sqrt(lo * hi);
  double g_mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = std::sqrt(lo * hi);
    g_mid = cutoff_residual(channel, mid, acc);
    if (g_mid == 0.0 || hi / lo - 1.0 < 1e-15) break;
    if (g_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (std::abs(g_mid) > 1e-9) {
    std::ostringstream os;
    os << "solve_cutoff: residual " << g_mid << " at g0=" << mid << " exceeds 1e-9";
    throw AccuracyError(os.str());
  }
  return mid;
}

double capacity_side_info(const CapacityScenario& sc, const AccuracyBudget& acc) {
  const double g0 = sc.cutoff_snr ? *sc.cutoff_snr : solve_cutoff(sc.channel, acc);
  if (!(g0 > 0.0)) throw DomainError("cutoff SNR must be > 0");
  auto integrand = [&](double x) {
    const double s = -x / g0;
    const double d0 = imgf_upper(sc.channel, s, g0, acc);
    const double d1 = imgf_deriv_s(sc.channel, s, g0, 1, Tail::Upper, acc);
    // Ei(-x) e^x = -e^x E1(x); -Psi = d1/g0 - d0 >= 0.
    return specfun::exp_integral_e1_scaled(x, acc) * (d1 / g0 - d0);
  };
  quad::QuadConfig qc;
  qc.rel_tol = 1e-10;
  const double v = quad::integrate_to_inf(integrand, 0.0, 1.0, qc).value;
  return v / std::numbers::ln2;
}

double capacity_side_info_direct(const CapacityScenario& sc, const AccuracyBudget& acc) {
  const double g0 = sc.cutoff_snr ? *sc.cutoff_snr : solve_cutoff(sc.channel, acc);
  if (!(g0 > 0.0)) throw DomainError("cutoff SNR must be > 0");
  quad::QuadConfig qc;
  qc.rel_tol = 1e-11;
  auto integrand = [&](double g) { return std::log2(g / g0) * pdf(sc.channel, g); };
  return quad::integrate_to_inf(integrand, g0, sc.channel.mean_snr, qc).value;
}

void AdaptiveModScheme::validate() const {
  if (thresholds.empty()) throw DomainError("adaptive modulation scheme has no regions");
  if (thresholds.size() != bits_per_region.size()) {
    throw DomainError("adaptive modulation scheme needs one bit count per region");
  }
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    if (!(thresholds[j] >= 0.0) || !std::isfinite(thresholds[j])) throw DomainError("thresholds must be >= 0");
    if (j > 0 && !(thresholds[j] > thresholds[j - 1])) throw DomainError("thresholds must be strictly ascending");
    if (bits_per_region[j] < 1) throw DomainError("bits per region must be >= 1");
  }
}

double mqam_threshold(int bits, double ber_target) {
  if (bits < 1) throw DomainError("bits must be >= 1");
  if (!(ber_target > 0.0 && ber_target < 0.2)) throw DomainError("BER target must lie in (0, 0.2)");
  return std::expm1(bits * std::numbers::ln2) / 1.5 * std::log(0.2 / ber_target);
}

AdaptiveModScheme scheme_for_target(const std::vector<int>& bits, double ber_target) {
  AdaptiveModScheme s;
  s.bits_per_region = bits;
  for (int k : bits) s.thresholds.push_back(mqam_threshold(k, ber_target));
  s.validate();
  return s;
}

double aber_adaptive(const FadingModel& channel, const AdaptiveModScheme& scheme, const AccuracyBudget& acc) {
  scheme.validate();
  double num = 0.0;
  double den = 0.0;
  const std::size_t n = scheme.thresholds.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = scheme.thresholds[j];
    const double hi = j + 1 < n ? scheme.thresholds[j + 1] : kInf;
    const int k = scheme.bits_per_region[j];
    const double s = -1.5 / std::expm1(k * std::numbers::ln2);
    // Increments over [lo, hi), taken from whichever tail keeps the digits.
    const bool upper_side = hi == kInf || cdf(channel, lo) > 0.5;
    double occupancy;
    double weighted;
    if (upper_side) {
      occupancy = imgf_upper(channel, 0.0, lo, acc) - (hi == kInf ? 0.0 : imgf_upper(channel, 0.0, hi, acc));
      weighted = imgf_upper(channel, s, lo, acc) - (hi == kInf ? 0.0 : imgf_upper(channel, s, hi, acc));
    } else {
      occupancy = imgf_lower(channel, 0.0, hi, acc) - imgf_lower(channel, 0.0, lo, acc);
      weighted = imgf_lower(channel, s, hi, acc) - imgf_lower(channel, s, lo, acc);
    }
    num += k * 0.2 * weighted;
    den += k * occupancy;
  }
  if (!(den > 0.0)) throw RangeError("adaptive modulation: no region has positive occupancy");
  return num / den;
}

}  // namespace incmgf
