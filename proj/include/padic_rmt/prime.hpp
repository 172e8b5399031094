#pragma once

#include <cstdint>

namespace padic {

// A rational prime, checked by trial division on construction.
class Prime {
 public:
  explicit Prime(std::int64_t p);

  std::int64_t value() const { return p_; }
  operator std::int64_t() const { return p_; }

  friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

}  // namespace padic
