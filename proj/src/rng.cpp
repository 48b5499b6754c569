#include "incmgf/rng.hpp"

namespace incmgf {
namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

void Philox::refill() {
  buf_ = block(ctr_, key_);
  // 64-bit block counter in the low words; the stream id stays in the high words.
  if (++ctr_[0] == 0) ++ctr_[1];
  pos_ = 0;
}

Philox::result_type Philox::operator()() {
  if (pos_ == 4) refill();
  return buf_[pos_++];
}

double Philox::uniform() {
  const std::uint64_t hi = (*this)() >> 5;
  const std::uint64_t lo = (*this)() >> 6;
  // (k + 0.5) / 2^53 stays strictly inside (0, 1).
  return (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
}

}  // namespace incmgf
