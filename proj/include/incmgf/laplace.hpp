#pragma once

// Numerical inversion of Laplace transforms, and the lower incomplete MGF of
// an arbitrary nonnegative variable from its MGF alone.

#include <complex>
#include <functional>

namespace incmgf {

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

/// Image H(p), analytic for Re(p) > abscissa.
struct LaplaceImage {
  ComplexFn evaluator;
  double abscissa = 0.0;
};

/// MGF M(s) = E[exp(sX)] of a nonnegative variable, analytic for Re(s) < pole.
struct MgfImage {
  ComplexFn evaluator;
  double pole = 0.0;
};

enum class InversionMethod { FixedTalbot, Euler };

struct InversionConfig {
  InversionMethod method = InversionMethod::FixedTalbot;
  int node_count = 32;
  double target_rel_tol = 1e-7;
  /// Values below this magnitude are judged on absolute error instead.
  double abs_floor = 1e-13;
  /// Retries at 1.5x the node count when the disagreement check fails.
  int escalations = 1;

  void validate() const;
};

struct InversionResult {
  double value = 0.0;
  /// Disagreement with the same method run at a reduced node count.
  double error_estimate = 0.0;
};

/// f(t) = L^{-1}{H}(t) for t > 0. Throws AccuracyError when the node-count
/// disagreement exceeds target_rel_tol * max(|f|, abs_floor) after all escalations.
InversionResult invert_with_error(const LaplaceImage& image, double t, const InversionConfig& cfg = {});
double invert(const LaplaceImage& image, double t, const InversionConfig& cfg = {});

/// Lower IMGF int_0^zeta exp(s x) f(x) dx as the inverse transform of M(s - p)/p at t = zeta.
/// Requires s strictly below the MGF pole.
double imgf_lower_numeric(const MgfImage& mgf, double s, double zeta, const InversionConfig& cfg = {});

}  // namespace incmgf
