#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/prime.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

// val_p(x) for a rational x; nullopt stands for +infinity (x = 0).
std::optional<std::int64_t> valuation(const mpq_class& x, Prime p);

// val_p of a nonzero integer.
std::int64_t valuation(const mpz_class& x, Prime p);

// p^e as a big integer.
mpz_class prime_power(Prime p, std::int64_t e);

// An element of Z/p^N. A zero residue that is not flagged exact means
// "zero to precision N", i.e. the valuation is only known to be >= N.
struct PadicScalar {
  mpz_class residue;
  int precision = 1;
  bool exact_zero = false;

  // nullopt when the residue is zero (exact zero or exhausted precision).
  std::optional<std::int64_t> valuation(Prime p) const;
};

// Matrix over Q_p at finite precision: p^shift times an integral matrix whose
// entries are residues mod p^N.
class PadicMatrix {
 public:
  // All entries start as exact zeros.
  PadicMatrix(Prime p, std::size_t rows, std::size_t cols, int precision, std::int64_t shift = 0);

  static PadicMatrix identity(Prime p, std::size_t n, int precision);

  Prime prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int precision() const { return precision_; }
  std::int64_t shift() const { return shift_; }
  const mpz_class& modulus() const { return modulus_; }

  const mpz_class& residue(std::size_t i, std::size_t j) const { return residues_[i * cols_ + j]; }
  bool is_exact_zero(std::size_t i, std::size_t j) const { return exact_zero_[i * cols_ + j] != 0; }
  PadicScalar at(std::size_t i, std::size_t j) const;

  // Stores an exactly known integer (0 becomes an exact zero).
  void set(std::size_t i, std::size_t j, const mpz_class& value);
  // Stores a value known only modulo p^N (never an exact zero).
  void set_residue(std::size_t i, std::size_t j, const mpz_class& value);
  void set_exact_zero(std::size_t i, std::size_t j);
  void set_shift(std::int64_t shift) { shift_ = shift; }

  // Same mathematical matrix viewed at another precision. Raising the
  // precision lifts residues to their canonical representatives.
  PadicMatrix with_precision(int precision) const;

  // Moves the largest common power of p out of the integral part into the
  // shift. Leaves an all-zero matrix untouched.
  PadicMatrix normalized() const;

  // Residue comparison at the common precision (shift included).
  bool congruent(const PadicMatrix& other) const;

 private:
  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  int precision_;
  std::int64_t shift_;
  mpz_class modulus_;
  std::vector<mpz_class> residues_;
  std::vector<unsigned char> exact_zero_;
};

using RationalMatrix = std::vector<std::vector<mpq_class>>;

// Extracts the minimal valuation into the shift and reduces the remaining
// integral matrix modulo p^N.
PadicMatrix reduce(const RationalMatrix& entries, Prime p, int precision);

PadicMatrix matmul(const PadicMatrix& a, const PadicMatrix& b);
PadicMatrix transpose(const PadicMatrix& a);

// A^(i): the last n-i+1 rows of A and all columns (1-based i).
PadicMatrix corner(const PadicMatrix& a, std::size_t i);

// Removes row r (1-based).
PadicMatrix delete_row(const PadicMatrix& a, std::size_t r);

// Swaps rows r and s (1-based).
PadicMatrix swap_rows(const PadicMatrix& a, std::size_t r, std::size_t s);

// diag_{rows x cols}(p^lambda_1, ..., p^lambda_rows); negative parts go to the shift.
PadicMatrix diag_signature(const Signature& lambda, std::size_t rows, std::size_t cols, Prime p,
                           int precision);

// diag(p^exponents) * A for nonnegative exponents, at the given precision.
PadicMatrix scale_rows(const PadicMatrix& a, const IntVector& exponents, int precision);

}  // namespace padic
