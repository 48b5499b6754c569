#pragma once

// The kappa-mu shadowed fading family and its special cases.
//
// SNR quantities are linear; dB appears only in the JSON/CLI helpers.

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "incmgf/laplace.hpp"

namespace incmgf {

class Philox;

enum class FadingKind {
  KappaMuShadowed,
  RicianShadowed,
  KappaMu,
  EtaMu,
  Rician,
  NakagamiM,
  Hoyt,
  Rayleigh,
  OneSidedGaussian,
};

/// m = infinity marks the unshadowed (kappa-mu) limit.
inline constexpr double kNoShadowing = std::numeric_limits<double>::infinity();

struct FadingModel {
  FadingKind kind = FadingKind::Rayleigh;
  double kappa = 0.0;
  double mu = 1.0;
  double m = kNoShadowing;
  double eta = 1.0;
  double K = 0.0;
  double q = 1.0;
  double mean_snr = 1.0;

  static FadingModel kappa_mu_shadowed(double kappa, double mu, double m, double mean_snr);
  static FadingModel rician_shadowed(double K, double m, double mean_snr);
  static FadingModel kappa_mu(double kappa, double mu, double mean_snr);
  static FadingModel eta_mu(double eta, double mu, double mean_snr);
  static FadingModel rician(double K, double mean_snr);
  static FadingModel nakagami(double m, double mean_snr);
  static FadingModel hoyt(double q, double mean_snr);
  static FadingModel rayleigh(double mean_snr);
  static FadingModel one_sided_gaussian(double mean_snr);

  /// Throws DomainError when a field used by `kind` is out of range.
  void validate() const;
};

/// Equivalent KappaMuShadowed parameterization. Idempotent; keeps mean_snr.
FadingModel canonicalize(const FadingModel& model);

/// M(s) = A (a - s)^(m - mu) (b - s)^(-m) for finite m.
struct MgfFactorization {
  double A = 1.0;
  double a = 1.0;
  double b = 1.0;
  double exponent_a = 0.0;
  double exponent_b = 0.0;
};

MgfFactorization factorize(const FadingModel& model);

/// Smallest singularity of the MGF on the real axis (= b).
double smallest_pole(const FadingModel& model);

double mgf(const FadingModel& model, double s);
std::complex<double> mgf(const FadingModel& model, std::complex<double> s);
MgfImage mgf_image(const FadingModel& model);

double pdf(const FadingModel& model, double x);
double log_pdf(const FadingModel& model, double x);
/// F(x); the lower IMGF at s = 0.
double cdf(const FadingModel& model, double x);

/// One draw using the caller's generator.
double draw(const FadingModel& model, Philox& rng);
/// n i.i.d. draws from stream 0 of `seed`.
std::vector<double> sample(const FadingModel& model, std::uint64_t seed, std::size_t n);

double db_to_linear(double db);
double linear_to_db(double linear);

std::string kind_name(FadingKind kind);
FadingKind parse_kind(const std::string& name);

/// {"kind": ..., "kappa", "mu", "m", "eta", "K", "q", "mean_snr_db" | "mean_snr"}.
FadingModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const FadingModel& model);

}  // namespace incmgf
