#pragma once

#include <cstddef>
#include <optional>

#include <gmpxx.h>

#include "padic_rmt/padic_matrix.hpp"
#include "padic_rmt/rng.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

// Omega = [[0, J_h], [-J_h, 0]] with J_h the antidiagonal identity, as a
// 2h x 2h matrix at the given precision.
PadicMatrix symplectic_form(std::size_t half, Prime p, int precision);

// Similitude of a GSp element: mu = p^shift * unit residue.
struct Similitude {
  std::int64_t shift = 0;
  mpz_class residue;
  int precision = 1;
};

struct GSpElement {
  PadicMatrix matrix;
  Similitude similitude;
};

// Returns mu when A Omega A^T = mu Omega at working precision, else nullopt.
// Throws PrecisionExhausted when A Omega A^T vanishes to precision.
std::optional<Similitude> is_gsp(const PadicMatrix& a);

// lambda_i + lambda_{2h+1-i} is the same for every i.
bool is_balanced(const Signature& lambda);

// SN of a GSp element; throws ConstraintViolated when the result is not balanced.
Signature gsp_singular_numbers(const PadicMatrix& a);

// Uniform element of Sp_{2h}(Z/p^N) from a uniformly random symplectic basis.
PadicMatrix sample_haar_sp(std::size_t half, Prime p, int precision, RngStream& rng);

// Uniform element of GSp_{2h}(Z/p^N): S diag(I_h, u I_h) with u a uniform unit.
GSpElement sample_haar_gsp(std::size_t half, Prime p, int precision, RngStream& rng);

// U diag(p^lambda) V with U, V independent Haar on GSp_{2h}(Z_p).
GSpElement sample_bi_invariant_gsp(const Signature& lambda, Prime p, int precision, RngStream& rng);

// (|SN(A^(1))|, ..., |SN(A^(2h))|) with the rectangular GL corners.
IntVector gsp_corner_weights(const PadicMatrix& a);

}  // namespace padic
