#pragma once

#include <stdexcept>
#include <string>

namespace incmgf {

/// Thrown when a series, quadrature, inversion or root search fails to meet its
/// accuracy budget. Never silently truncated.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the contract of an operation (MGF pole, bad shape, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Result not representable (overflow, logarithmic singularity).
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

}  // namespace incmgf
