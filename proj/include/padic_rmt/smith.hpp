#pragma once

#include "padic_rmt/padic_matrix.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

// Singular numbers of a full-rank rows <= cols matrix by p-adic Gaussian
// elimination: take an entry of minimal valuation as pivot (ties go to the
// smallest (row, col)), clear its column, drop its row and column, repeat.
// The pivot valuations, sorted and offset by the shift, are SN(A).
//
// Throws PrecisionExhausted when the remaining block is zero to precision and
// SingularMatrix when it is made of exact zeros.
Signature smith_singular_numbers(const PadicMatrix& a);

// Minors oracle: lambda_n + ... + lambda_{n-k+1} is the minimal valuation of a
// k x k minor. Determinants use cofactor expansion over the integer lifts, so
// this shares no code with the elimination. Exponential; rows <= 5.
Signature singular_numbers_via_minors(const PadicMatrix& a);

// SN(diag(p^kappa) * A) for a rows x cols matrix A with len(kappa) = rows.
// kappa_min is moved into the shift so residues only grow with the spread of
// kappa. A must already resolve its own singular numbers at its precision.
Signature scaled_singular_numbers(const IntVector& kappa, const PadicMatrix& a);

}  // namespace padic
