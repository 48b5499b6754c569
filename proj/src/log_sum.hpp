#pragma once

#include <cmath>
#include <limits>

namespace incmgf::detail {

// Accumulates signed terms given as (sign, log|term|) with a floating reference
// so that sums of numbers far outside double range stay representable.
class LogSum {
 public:
  void add(double log_abs, int sign = 1) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) {
      return;
    }
    if (empty_) {
      ref_ = log_abs;
      sum_ = sign;
      comp_ = 0.0;
      empty_ = false;
      return;
    }
    if (log_abs > ref_) {
      const double scale = std::exp(ref_ - log_abs);
      sum_ *= scale;
      comp_ *= scale;
      ref_ = log_abs;
    }
    kahan_add(sign * std::exp(log_abs - ref_));
  }

  bool empty() const { return empty_; }
  /// log|sum|; -inf for an empty or exactly cancelled sum.
  double log_abs() const {
    if (empty_ || sum_ - comp_ == 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
    return ref_ + std::log(std::abs(sum_ - comp_));
  }
  int sign() const { return (sum_ - comp_) < 0.0 ? -1 : 1; }
  double value() const {
    if (empty_) return 0.0;
    return sign() * std::exp(log_abs());
  }
  /// Magnitude of a candidate term relative to the current sum.
  double relative(double log_abs_term) const {
    if (empty_) return std::numeric_limits<double>::infinity();
    return std::exp(log_abs_term - log_abs());
  }

 private:
  void kahan_add(double v) {
    const double y = v - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  bool empty_ = true;
  double ref_ = 0.0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace incmgf::detail
