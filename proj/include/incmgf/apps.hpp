#pragma once

// Performance metrics built on the incomplete MGF: secrecy outage, outage
// under interference, capacity with transmitter side information, and the
// average BER of adaptive M-QAM.

#include <optional>
#include <vector>

#include "incmgf/fading.hpp"
#include "incmgf/specfun.hpp"

namespace incmgf {

struct SecrecyScenario {
  FadingModel bob;
  /// Integer (mu, m) kappa-mu shadowed, or any kappa = 0 model with integer mu.
  FadingModel eve;
  double rate_rs = 0.0;  // bits/s/Hz
  int n_eve_antennas = 1;

  void validate() const;
};

/// 2^R - 1.
double secrecy_alpha(double rate_rs);

/// Eve's per-branch model combined over n_eve_antennas i.i.d. MRC branches.
FadingModel eve_after_mrc(const FadingModel& eve, int n_eve_antennas);

/// Pr{log2((1 + g_b) / (1 + g_e)) <= R_S}.
double opsc(const SecrecyScenario& sc, const AccuracyBudget& acc = {});
/// opsc at R_S = 0, i.e. Pr{C_S <= 0}; the probability of strictly positive
/// secrecy capacity is one minus this.
double spsc(const SecrecyScenario& sc, const AccuracyBudget& acc = {});
/// Largest R_S with opsc(R_S) <= epsilon; zero when even R_S = 0 fails.
double eps_outage_capacity(const SecrecyScenario& sc, double epsilon, const AccuracyBudget& acc = {});

/// Secrecy scenario whose OPSC equals Pr{g_d <= g_th (g_i + 1)}.
SecrecyScenario interference_as_secrecy(const FadingModel& desired, const FadingModel& interference,
                                        double gamma_th);
double outage_interference(const FadingModel& desired, const FadingModel& interference, double gamma_th,
                           const AccuracyBudget& acc = {});

struct CapacityScenario {
  FadingModel channel;
  std::optional<double> cutoff_snr;
};

/// Power-constraint residual int_{g0}^inf (1/g0 - 1/g) f(g) dg - 1.
double cutoff_residual(const FadingModel& channel, double gamma0, const AccuracyBudget& acc = {});
/// Root of cutoff_residual in [1e-9, 1] by bisection.
double solve_cutoff(const FadingModel& channel, const AccuracyBudget& acc = {});
/// (1/ln 2) int_0^inf Ei(-x) e^x Psi(x, g0) dx, Psi built from the upper IMGF and its s-derivative.
double capacity_side_info(const CapacityScenario& sc, const AccuracyBudget& acc = {});
/// int_{g0}^inf log2(g / g0) f(g) dg by quadrature of the density.
double capacity_side_info_direct(const CapacityScenario& sc, const AccuracyBudget& acc = {});

struct AdaptiveModScheme {
  /// Ascending switching SNRs g_0 < ... < g_{N-2}; the last region is open.
  std::vector<double> thresholds;
  /// Bits per symbol for region [g_{j-1}, g_j); same length as thresholds.
  std::vector<int> bits_per_region;

  void validate() const;
};

/// Switching SNR where 0.2 exp(-1.5 g / (2^k - 1)) meets the BER target.
double mqam_threshold(int bits, double ber_target);
/// Regions for the given constellation sizes, each entered at its BER-target threshold.
AdaptiveModScheme scheme_for_target(const std::vector<int>& bits, double ber_target);

double aber_adaptive(const FadingModel& channel, const AdaptiveModScheme& scheme, const AccuracyBudget& acc = {});

}  // namespace incmgf
