#pragma once

// Counter-based Philox4x32-10 generator. A (seed, stream) pair names an
// independent sequence, so Monte Carlo shards can be generated in any order.

#include <array>
#include <cstdint>
#include <limits>

namespace incmgf {

class Philox {
 public:
  using result_type = std::uint32_t;

  Philox(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform double in the open interval (0, 1), 53 random bits.
  double uniform();

  /// Raw block function: 10 rounds applied to (counter, key).
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace incmgf
