#pragma once

#include <array>
#include <cstdint>

namespace skewlab {

/// Philox4x32-10 counter-based random stream.
///
/// A stream is addressed by (seed, stream_id): the 64-bit seed forms the
/// key, the 64-bit stream id occupies the high counter words, and the low
/// counter words enumerate blocks within the stream. Distinct stream ids
/// therefore yield statistically independent streams under the same seed,
/// with no shared state: one stream per simulated path makes results
/// independent of thread scheduling.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream_id)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr2_(static_cast<std::uint32_t>(stream_id)),
        ctr3_(static_cast<std::uint32_t>(stream_id >> 32)) {
    refill();
  }

  std::uint32_t next_u32() {
    if (index_ == 4) refill();
    return block_[index_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// One keyed block, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            std::uint32_t key0, std::uint32_t key1) {
    std::array<std::uint32_t, 4> x = counter;
    for (int round = 0; round < 9; ++round) {
      x = one_round(x, key0, key1);
      key0 += 0x9E3779B9u;  // golden ratio increment
      key1 += 0xBB67AE85u;  // sqrt(3) - 1 increment
    }
    return one_round(x, key0, key1);
  }

 private:
  static std::array<std::uint32_t, 4> one_round(const std::array<std::uint32_t, 4>& x,
                                                std::uint32_t key0, std::uint32_t key1) {
    const std::uint64_t product0 = 0xD2511F53ull * x[0];
    const std::uint64_t product1 = 0xCD9E8D57ull * x[2];
    const auto hi0 = static_cast<std::uint32_t>(product0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(product0);
    const auto hi1 = static_cast<std::uint32_t>(product1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(product1);
    return {hi1 ^ x[1] ^ key0, lo1, hi0 ^ x[3] ^ key1, lo0};
  }

  void refill() {
    block_ = block({ctr0_, ctr1_, ctr2_, ctr3_}, key0_, key1_);
    index_ = 0;
    if (++ctr0_ == 0) ++ctr1_;  // 64-bit block counter within the stream
  }

  std::array<std::uint32_t, 4> block_{};
  int index_ = 4;
  std::uint32_t key0_, key1_;
  std::uint32_t ctr0_ = 0, ctr1_ = 0;
  std::uint32_t ctr2_, ctr3_;
};

}  // namespace skewlab
