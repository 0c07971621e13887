#pragma once

#include <cmath>
#include <cstdint>

// Philox-4x32-10 counter-based generator. Each (key, counter) pair maps to
// four independent 32-bit words, so any (trial, step, purpose) coordinate
// can be sampled out of order and in parallel without shared state.
namespace infolqg::rng {

struct Block {
  std::uint32_t x[4];
};

inline Block philox4x32(std::uint32_t k0, std::uint32_t k1, Block ctr) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr.x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr.x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    Block next;
    next.x[0] = hi1 ^ ctr.x[1] ^ k0;
    next.x[1] = lo1;
    next.x[2] = hi0 ^ ctr.x[3] ^ k1;
    next.x[3] = lo0;
    ctr = next;
    k0 += kW0;
    k1 += kW1;
  }
  return ctr;
}

// Uniform in (0, 1]: never returns 0, so log() below is safe.
inline double to_unit(std::uint32_t u) {
  return (static_cast<double>(u) + 1.0) * 0x1p-32;
}

// Deterministic stream of standard normals addressed by
// (seed, trial, purpose, step). Consecutive values within one address come
// from successive counter blocks via Box-Muller.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t purpose,
                 std::uint32_t step)
      : k0_(static_cast<std::uint32_t>(seed)),
        k1_(static_cast<std::uint32_t>(seed >> 32)),
        trial_lo_(static_cast<std::uint32_t>(trial)),
        trial_hi_(static_cast<std::uint32_t>(trial >> 32)),
        tag_((static_cast<std::uint32_t>(purpose) << 24) | (step & 0xFFFFFFu)) {
  }

  double next() {
    if (have_ == 0) refill();
    return buf_[4 - have_--];
  }

 private:
  void refill() {
    Block ctr{{trial_lo_, trial_hi_ ^ tag_, tag_, block_++}};
    Block out = philox4x32(k0_, k1_, ctr);
    const double u1 = to_unit(out.x[0]);
    const double u2 = to_unit(out.x[1]);
    const double u3 = to_unit(out.x[2]);
    const double u4 = to_unit(out.x[3]);
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    buf_[0] = r1 * std::cos(kTwoPi * u2);
    buf_[1] = r1 * std::sin(kTwoPi * u2);
    buf_[2] = r2 * std::cos(kTwoPi * u4);
    buf_[3] = r2 * std::sin(kTwoPi * u4);
    have_ = 4;
  }

  std::uint32_t k0_, k1_, trial_lo_, trial_hi_, tag_;
  std::uint32_t block_ = 0;
  int have_ = 0;
  double buf_[4] = {};
};

}  // namespace infolqg::rng
