#pragma once

// Lower and upper incomplete MGFs
//   M^l(s, z) = int_0^z exp(s x) f(x) dx,   M^u(s, z) = int_z^inf exp(s x) f(x) dx
// of the fading models, and their s-derivatives.

#include "incmgf/fading.hpp"
#include "incmgf/laplace.hpp"
#include "incmgf/specfun.hpp"

namespace incmgf {

enum class Tail { Lower, Upper };

inline constexpr int kMaxDerivOrder = 12;

struct ImgfQuery {
  double s = 0.0;
  double zeta = 0.0;
  Tail tail = Tail::Lower;
  int deriv_order = 0;
  AccuracyBudget acc;
};

/// Closed form by canonical kind: Phi2 (shadowed), Marcum Q (unshadowed), incomplete gamma (kappa = 0).
/// Defined for every real s except the unshadowed row, which needs s < mu (1 + kappa) / mean.
double imgf_lower(const FadingModel& model, double s, double zeta, const AccuracyBudget& acc = {});

/// M(s) - M^l(s, z) for s below the smallest pole. When the difference loses more
/// than six digits to cancellation the tail is summed directly instead.
double imgf_upper(const FadingModel& model, double s, double zeta, const AccuracyBudget& acc = {});

/// k-th derivative in s of the selected tail, i.e. int x^k exp(s x) f(x) dx over it.
/// Needs s below the smallest pole and 0 <= k <= kMaxDerivOrder.
double imgf_deriv_s(const FadingModel& model, double s, double zeta, int k, Tail tail,
                    const AccuracyBudget& acc = {});

/// exp(log_scale) * imgf_deriv_s(...), formed in the log domain so that a large
/// scale and a tiny tail do not over- or underflow separately.
double scaled_imgf_deriv_s(const FadingModel& model, double s, double zeta, int k, Tail tail, double log_scale,
                           const AccuracyBudget& acc = {});

double imgf(const FadingModel& model, const ImgfQuery& query);

/// Lower IMGF of any nonnegative variable from its MGF alone, by Laplace inversion.
double imgf_generic(const MgfImage& mgf, double s, double zeta, const InversionConfig& cfg = {});

/// The eta-mu lower IMGF written directly in (eta, mu), without the kappa-mu shadowed mapping.
double imgf_lower_eta_mu_direct(double eta, double mu, double mean_snr, double s, double zeta,
                                const AccuracyBudget& acc = {});

}  // namespace incmgf
