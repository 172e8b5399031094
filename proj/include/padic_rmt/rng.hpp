#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace padic {

// Counter-based random stream. The 128-bit key is derived from
// (master_seed, stream_index) with the SplitMix64 finalizer; output word c is
// mix(k0 + mix(k1 ^ c * golden)). Same key -> same sequence on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();
  // Uniform on [0, bound), bound >= 1, unbiased.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [0, bound) for a big bound >= 1.
  mpz_class uniform_below(const mpz_class& bound);
  double uniform01();

  // Child stream keyed by the parent key and the next counter; advances the
  // parent by exactly one word.
  RngStream split();
  // Child stream keyed by (key, tag); the parent does not advance.
  RngStream derive(std::uint64_t tag) const;

  std::uint64_t key0() const { return k0_; }
  std::uint64_t key1() const { return k1_; }
  std::uint64_t position() const { return counter_; }

 private:
  RngStream(std::uint64_t k0, std::uint64_t k1, int /*raw*/) : k0_(k0), k1_(k1) {}

  std::uint64_t k0_;
  std::uint64_t k1_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace padic
