#pragma once

// Finite gamma-mixture form of the kappa-mu shadowed CDF for integer mu and m:
//   F(x) = 1 - sum_i C_i exp(-x / Omega_i) sum_{r < m_i} (x / Omega_i)^r / r!

#include <vector>

#include "incmgf/fading.hpp"

namespace incmgf {

struct MixtureTerm {
  int index = 0;  // row index i of the coefficient table
  double C = 0.0;
  double Omega = 1.0;
  int shape = 1;
};

struct GammaMixture {
  int M = 0;
  std::vector<MixtureTerm> terms;

  /// sum_i C_i over terms with shape > 0; equals one for a valid mixture.
  double weight_sum() const;
};

/// Which column of the coefficient table to use. Auto picks mu > m or mu <= m;
/// the forced variants exist to check that both agree on the mu = m boundary.
enum class MixtureColumn { Auto, MuGreaterThanM, MuAtMostM };

GammaMixture mixture_params(double kappa, int mu, int m, double mean_snr, MixtureColumn column = MixtureColumn::Auto);

/// Mixture for a model that canonicalizes to integer (mu, m), or kappa = 0 with integer mu.
GammaMixture mixture_for(const FadingModel& model);

double mixture_cdf(const GammaMixture& mix, double gamma);

}  // namespace incmgf
