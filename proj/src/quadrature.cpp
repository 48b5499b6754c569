#include "incmgf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "incmgf/errors.hpp"

namespace incmgf::quad {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * half;
  double err = std::abs((resk - resg) * half);
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "quadrature: non-finite integrand on [" << lo << ", " << hi << "]";
    throw AccuracyError(os.str());
  }
  // Roundoff floor relative to the segment magnitude.
  err = std::max(err, 50.0 * 2.2e-16 * std::abs(value));
  return {lo, hi, value, err};
}

}  // namespace

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadConfig& cfg) {
  if (!(hi >= lo)) throw DomainError("integrate requires lo <= hi");
  if (hi == lo) return {};
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, lo, hi);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int intervals = 1;
  auto converged = [&] { return total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  while (!converged()) {
    if (intervals >= cfg.max_intervals) {
      std::ostringstream os;
      os << "quadrature on [" << lo << ", " << hi << "] did not converge: value " << total << ", error "
         << total_err << " after " << intervals << " intervals";
      throw AccuracyError(os.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval cannot be split further; accept its contribution as is.
      total_err -= worst.error;
      heap.push({worst.lo, worst.hi, worst.value, 0.0});
      if (heap.top().error == 0.0) break;
      continue;
    }
    const Segment left = gk15(f, worst.lo, mid);
    const Segment right = gk15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum from the segments to shed the drift of the running updates.
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  double err = 0.0;
  while (!heap.empty()) {
    segs.push_back(heap.top());
    err += heap.top().error;
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& s : segs) {
    const double y = s.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return {sum, err, intervals};
}

QuadResult integrate_to_inf(const Integrand& f, double lo, double scale, const QuadConfig& cfg) {
  if (!(scale > 0.0)) throw DomainError("integrate_to_inf requires scale > 0");
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double x = lo + scale * t / u;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * scale / (u * u);
  };
  return integrate(g, 0.0, 1.0, cfg);
}

}  // namespace incmgf::quad
