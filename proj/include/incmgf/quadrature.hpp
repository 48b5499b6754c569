#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.

#include <functional>

namespace incmgf::quad {

struct QuadConfig {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Integral over the finite interval [lo, hi]. Throws AccuracyError when the
/// interval budget runs out before the error estimate meets the tolerance.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadConfig& cfg = {});

/// Integral over [lo, inf) with the map x = lo + scale * t / (1 - t).
QuadResult integrate_to_inf(const Integrand& f, double lo, double scale, const QuadConfig& cfg = {});

}  // namespace incmgf::quad
