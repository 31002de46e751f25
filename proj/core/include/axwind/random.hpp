/**
 * @file random.hpp
 * @brief Philox4x32-10 counter-based generator.
 *
 * Salmon et al., "Parallel random numbers: as easy as 1, 2, 3" (SC 2011).
 * A stream is identified by (seed, stream id); draw i of a stream is a pure
 * function of (seed, stream id, i), so work can be split across threads in
 * any order and still reproduce the same numbers.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "axwind/constants.hpp"

namespace axwind {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static constexpr Counter single_round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t{kM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Sequential view of one Philox stream.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t offset = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream),
        block_(offset) {}

  /// Uniform on (0, 1); never returns 0 so log() is safe.
  double uniform() {
    if (lane_ == 4) refill();
    const std::uint32_t hi = buffer_[lane_++];
    if (lane_ == 4) refill();
    const std::uint32_t lo = buffer_[lane_++];
    const std::uint64_t bits = (std::uint64_t{hi} << 21) | (lo >> 11);
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = kTwoPi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  double exponential(double mean) { return -mean * std::log(uniform()); }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = Philox4x32::generate(ctr, key_);
    ++block_;
    lane_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_;
  Philox4x32::Counter buffer_{};
  int lane_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives a stream id from a purpose tag and an index (trial, epoch, bootstrap resample).
constexpr std::uint64_t stream_id(std::uint32_t purpose, std::uint32_t index) {
  return (std::uint64_t{purpose} << 32) | index;
}

}  // namespace axwind
