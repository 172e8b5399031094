#pragma once

#include <gmpxx.h>

#include "padic_rmt/prime.hpp"

namespace padic::detail {

// r <- r mod p^precision, with the canonical representative in [0, p^precision).
inline void reduce_in_place(mpz_class& r, Prime p, int precision, const mpz_class& modulus) {
  if (p.value() == 2) {
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(precision));
  } else {
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  }
}

}  // namespace padic::detail
