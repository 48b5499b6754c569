#include "incmgf/laplace.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "incmgf/errors.hpp"

namespace incmgf {
namespace {

using cd = std::complex<double>;

double talbot(const LaplaceImage& image, double t, int m) {
  // Fixed Talbot contour p(theta) = r theta (cot theta + i), shifted to the abscissa.
  const double shift = std::max(0.0, image.abscissa);
  const double r = 2.0 * m / (5.0 * t);
  const double pi = std::numbers::pi;
  double sum = 0.5 * std::exp(r * t) * image.evaluator(cd(r + shift, 0.0)).real();
  for (int k = 1; k < m; ++k) {
    const double theta = k * pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const cd p(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const cd term = std::exp(t * p) * image.evaluator(p + shift) * cd(1.0, sigma);
    sum += term.real();
  }
  return std::exp(shift * t) * r / m * sum;
}

double euler(const LaplaceImage& image, double t, int nodes) {
  const int m = nodes / 2;
  const double pi = std::numbers::pi;
  // xi_k weights of the binomially averaged alternating sum.
  std::vector<double> xi(2 * m + 1, 1.0);
  xi[0] = 0.5;
  xi[2 * m] = std::pow(2.0, -m);
  double binom = 1.0;
  for (int k = 1; k < m; ++k) {
    binom *= static_cast<double>(m - k + 1) / k;
    xi[2 * m - k] = xi[2 * m - k + 1] + std::pow(2.0, -m) * binom;
  }
  const double shift = std::max(0.0, image.abscissa);
  const double base = m * std::log(10.0) / 3.0;
  double sum = 0.0;
  for (int k = 0; k <= 2 * m; ++k) {
    const double eta = (k % 2 == 0 ? 1.0 : -1.0) * xi[k];
    const cd beta(base, pi * k);
    sum += eta * image.evaluator(beta / t + shift).real();
  }
  return std::exp(shift * t) * std::pow(10.0, m / 3.0) / t * sum;
}

double run(const LaplaceImage& image, double t, InversionMethod method, int nodes) {
  return method == InversionMethod::FixedTalbot ? talbot(image, t, nodes) : euler(image, t, nodes);
}

}  // namespace

void InversionConfig::validate() const {
  if (node_count < 8) throw DomainError("InversionConfig: node_count must be at least 8");
  if (escalations < 0) throw DomainError("InversionConfig: escalations must be nonnegative");
  if (method == InversionMethod::Euler && node_count % 2 != 0) {
    throw DomainError("InversionConfig: Euler method needs an even node_count");
  }
  if (!(target_rel_tol > 0.0)) throw DomainError("InversionConfig: target_rel_tol must be positive");
}

InversionResult invert_with_error(const LaplaceImage& image, double t, const InversionConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("invert requires finite t > 0");
  if (!std::isfinite(image.abscissa)) throw DomainError("invert requires a finite abscissa");
  std::ostringstream os;
  os.precision(10);
  os << "Laplace inversion at t=" << t << " unstable:";
  int nodes = cfg.node_count;
  for (int attempt = 0; attempt <= cfg.escalations; ++attempt) {
    const double value = run(image, t, cfg.method, nodes);
    int lower = (nodes * 3) / 4;
    if (lower % 2 != 0) --lower;
    const double coarse = run(image, t, cfg.method, lower);
    const double err = std::abs(value - coarse);
    if (std::isfinite(value) && err <= cfg.target_rel_tol * std::max(std::abs(value), cfg.abs_floor)) {
      return {value, err};
    }
    os << " " << value << " with " << nodes << " nodes vs " << coarse << " with " << lower << ";";
    nodes = (nodes * 3) / 2;
    if (nodes % 2 != 0) ++nodes;
  }
  throw AccuracyError(os.str());
}

double invert(const LaplaceImage& image, double t, const InversionConfig& cfg) {
  return invert_with_error(image, t, cfg).value;
}

double imgf_lower_numeric(const MgfImage& mgf, double s, double zeta, const InversionConfig& cfg) {
  if (!(zeta >= 0.0)) throw DomainError("imgf_lower_numeric requires zeta >= 0");
  if (!(s < mgf.pole)) {
    std::ostringstream os;
    os << "imgf_lower_numeric: s=" << s << " is not below the MGF pole " << mgf.pole;
    throw DomainError(os.str());
  }
  if (zeta == 0.0) return 0.0;
  if (zeta == std::numeric_limits<double>::infinity()) return mgf.evaluator(cd(s, 0.0)).real();
  LaplaceImage h;
  const auto& m = mgf.evaluator;
  h.evaluator = [&m, s](cd p) { return m(s - p) / p; };
  h.abscissa = std::max(0.0, s - mgf.pole);
  return invert(h, zeta, cfg);
}

}  // namespace incmgf
