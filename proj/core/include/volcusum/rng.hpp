#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace volcusum {

/// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3").
///
/// The 64-bit seed is the Philox key and the 64-bit stream id occupies the
/// upper half of the 128-bit counter, so every (seed, stream) pair is an
/// independent sequence of 2^64 blocks. Replications, segments and limit-table
/// columns each get their own stream, which makes results independent of the
/// order in which work is scheduled.
///
/// Satisfies UniformRandomBitGenerator with 64-bit output.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Ten-round Philox4x32 bijection; exposed for known-answer tests.
  static Block bijection(Block counter, Key key) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int cursor_ = 2;  // 64-bit words consumed from buffer_
};

/// SplitMix64 finalizer; used to fold structured identifiers into stream ids.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream ids used across the library. Distinct domains never collide because
/// the domain tag occupies the top byte.
namespace streams {

inline constexpr std::uint64_t kReplicationPanel = 0;
inline constexpr std::uint64_t kReplicationLimit = 1;

/// Stream for one replication of a Monte Carlo experiment.
constexpr std::uint64_t replication(std::uint64_t rep, std::uint64_t purpose) noexcept {
  return (rep << 2) | purpose;
}

/// Stream for column `column` of a shared limit table.
constexpr std::uint64_t limit_table(std::uint64_t table, std::uint64_t column) noexcept {
  return (std::uint64_t{0xB1} << 56) | (table << 40) | column;
}

/// Stream for the test run on days [first, first + count) during segmentation.
std::uint64_t segment(std::uint64_t first, std::uint64_t count) noexcept;

}  // namespace streams

}  // namespace volcusum
