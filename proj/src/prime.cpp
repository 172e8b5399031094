#include "padic_rmt/prime.hpp"

#include <stdexcept>
#include <string>

namespace padic {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::int64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

}  // namespace padic
