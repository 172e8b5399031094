#include "padic_rmt/rng.hpp"

#include <limits>

namespace padic {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamDomain = 0xd1b54a32d192ed03ULL;
constexpr std::uint64_t kSplitDomain = 0x8cb92ba72f3d8dd7ULL;
constexpr std::uint64_t kDeriveDomain = 0xaef17502108ef2d9ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : k0_(mix64(master_seed + kGolden) ^ mix64(stream_index ^ kStreamDomain)),
      k1_(mix64(k0_ + mix64(stream_index + kGolden) + kStreamDomain)) {}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t c = counter_++;
  return mix64(k0_ + mix64(k1_ ^ (c * kGolden)));
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the top sliver so every residue class is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

mpz_class RngStream::uniform_below(const mpz_class& bound) {
  if (bound <= 1) return 0;
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  mpz_class x;
  do {
    x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = next_u64();
      if (w + 1 == words && excess > 0) word >>= excess;
      x <<= 64;
      mpz_class part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      x += part;
    }
  } while (x >= bound);
  return x;
}

double RngStream::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

RngStream RngStream::split() {
  const std::uint64_t c = next_u64();
  return RngStream(mix64(k0_ ^ c ^ kSplitDomain), mix64(k1_ + c + kSplitDomain), 0);
}

RngStream RngStream::derive(std::uint64_t tag) const {
  const std::uint64_t t = mix64(tag + kDeriveDomain);
  return RngStream(mix64(k0_ ^ t), mix64(k1_ + t * kGolden), 0);
}

}  // namespace padic
