#include "volcusum/rng.hpp"

namespace volcusum {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) noexcept
    : seed_(seed), stream_(stream) {}

Philox::Block Philox::bijection(Block ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMulA, ctr[0], lo0, hi0);
    mulhilo(kMulB, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

void Philox::refill() noexcept {
  const Block counter{static_cast<std::uint32_t>(block_),
                      static_cast<std::uint32_t>(block_ >> 32),
                      static_cast<std::uint32_t>(stream_),
                      static_cast<std::uint32_t>(stream_ >> 32)};
  const Key key{static_cast<std::uint32_t>(seed_),
                static_cast<std::uint32_t>(seed_ >> 32)};
  buffer_ = bijection(counter, key);
  ++block_;
  cursor_ = 0;
}

Philox::result_type Philox::operator()() noexcept {
  if (cursor_ == 2) refill();
  const auto i = static_cast<std::size_t>(2 * cursor_);
  ++cursor_;
  return static_cast<std::uint64_t>(buffer_[i]) |
         (static_cast<std::uint64_t>(buffer_[i + 1]) << 32);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace streams {

std::uint64_t segment(std::uint64_t first, std::uint64_t count) noexcept {
  // Top byte 0xC5 tags the segmentation domain; the rest is a hash of the bounds.
  const std::uint64_t h = mix64(mix64(first) ^ count);
  return (std::uint64_t{0xC5} << 56) | (h >> 8);
}

}  // namespace streams

}  // namespace volcusum
