#pragma once

// Reference engines independent of the closed forms: quadrature of the
// defining integrals and seeded Monte Carlo.

#include <cstdint>
#include <functional>

#include "incmgf/apps.hpp"
#include "incmgf/imgf.hpp"

namespace incmgf {

struct McConfig {
  std::uint64_t n_samples = 10'000'000;
  std::uint64_t seed = 1;
  double confidence_sigmas = 3.0;

  void validate() const;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// int exp(s x) f(x) dx over [0, zeta] or [zeta, inf) by adaptive Gauss-Kronrod.
double quad_imgf(const FadingModel& model, double s, double zeta, Tail tail, double rel_tol = 1e-12);

McEstimate mc_opsc(const SecrecyScenario& sc, const McConfig& cfg);
McEstimate mc_aber(const FadingModel& channel, const AdaptiveModScheme& scheme, const McConfig& cfg);

/// Worker threads for Monte Carlo: INCMGF_THREADS if set, else hardware concurrency.
int mc_thread_count();

/// Samples per shard. Shard i draws from Philox stream i, so the result does not
/// depend on the thread count.
inline constexpr std::uint64_t kMcShardSize = 1u << 16;

}  // namespace incmgf
