#include "padic_rmt/padic_matrix.hpp"

#include <algorithm>
#include <limits>

#include "padic_rmt/errors.hpp"
#include "residue_ops.hpp"

namespace padic {

std::int64_t valuation(const mpz_class& x, Prime p) {
  if (x == 0) throw std::domain_error("valuation of zero integer");
  if (p.value() == 2) return static_cast<std::int64_t>(mpz_scan1(x.get_mpz_t(), 0));
  mpz_class rest;
  mpz_class pp = static_cast<unsigned long>(p.value());
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

std::optional<std::int64_t> valuation(const mpq_class& x, Prime p) {
  if (x == 0) return std::nullopt;
  return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

mpz_class prime_power(Prime p, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("negative exponent in prime_power");
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p.value()), static_cast<unsigned long>(e));
  return out;
}

std::optional<std::int64_t> PadicScalar::valuation(Prime p) const {
  if (residue == 0) return std::nullopt;
  return padic::valuation(residue, p);
}

PadicMatrix::PadicMatrix(Prime p, std::size_t rows, std::size_t cols, int precision,
                         std::int64_t shift)
    : p_(p),
      rows_(rows),
      cols_(cols),
      precision_(precision),
      shift_(shift),
      modulus_(prime_power(p, precision)),
      residues_(rows * cols),
      exact_zero_(rows * cols, 1) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
}

PadicMatrix PadicMatrix::identity(Prime p, std::size_t n, int precision) {
  PadicMatrix out(p, n, n, precision);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
  return out;
}

PadicScalar PadicMatrix::at(std::size_t i, std::size_t j) const {
  return PadicScalar{residue(i, j), precision_, is_exact_zero(i, j)};
}

void PadicMatrix::set(std::size_t i, std::size_t j, const mpz_class& value) {
  mpz_class& r = residues_[i * cols_ + j];
  r = value;
  detail::reduce_in_place(r, p_, precision_, modulus_);
  exact_zero_[i * cols_ + j] = (value == 0);
}

void PadicMatrix::set_residue(std::size_t i, std::size_t j, const mpz_class& value) {
  mpz_class& r = residues_[i * cols_ + j];
  r = value;
  detail::reduce_in_place(r, p_, precision_, modulus_);
  exact_zero_[i * cols_ + j] = 0;
}

void PadicMatrix::set_exact_zero(std::size_t i, std::size_t j) {
  residues_[i * cols_ + j] = 0;
  exact_zero_[i * cols_ + j] = 1;
}

PadicMatrix PadicMatrix::with_precision(int precision) const {
  PadicMatrix out(p_, rows_, cols_, precision, shift_);
  for (std::size_t k = 0; k < residues_.size(); ++k) {
    out.residues_[k] = residues_[k];
    if (precision < precision_) detail::reduce_in_place(out.residues_[k], p_, precision, out.modulus_);
    out.exact_zero_[k] = exact_zero_[k];
  }
  return out;
}

PadicMatrix PadicMatrix::normalized() const {
  std::int64_t v = std::numeric_limits<std::int64_t>::max();
  for (const auto& r : residues_) {
    if (r != 0) v = std::min(v, valuation(r, p_));
  }
  if (v == std::numeric_limits<std::int64_t>::max() || v == 0) return *this;
  PadicMatrix out(p_, rows_, cols_, precision_ - static_cast<int>(v), shift_ + v);
  const mpz_class pv = prime_power(p_, v);
  for (std::size_t k = 0; k < residues_.size(); ++k) {
    mpz_divexact(out.residues_[k].get_mpz_t(), residues_[k].get_mpz_t(), pv.get_mpz_t());
    out.exact_zero_[k] = exact_zero_[k];
  }
  return out;
}

bool PadicMatrix::congruent(const PadicMatrix& other) const {
  if (!(p_ == other.p_) || rows_ != other.rows_ || cols_ != other.cols_) return false;
  const std::int64_t base = std::min(shift_, other.shift_);
  const std::int64_t top = std::min(shift_ + precision_, other.shift_ + other.precision_);
  if (top <= base) return true;
  const mpz_class mod = prime_power(p_, top - base);
  const mpz_class sa = prime_power(p_, shift_ - base);
  const mpz_class sb = prime_power(p_, other.shift_ - base);
  for (std::size_t k = 0; k < residues_.size(); ++k) {
    mpz_class diff = residues_[k] * sa - other.residues_[k] * sb;
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), mod.get_mpz_t());
    if (diff != 0) return false;
  }
  return true;
}

PadicMatrix reduce(const RationalMatrix& entries, Prime p, int precision) {
  const std::size_t rows = entries.size();
  const std::size_t cols = rows ? entries.front().size() : 0;
  std::optional<std::int64_t> shift;
  for (const auto& row : entries) {
    if (row.size() != cols) throw DimensionMismatch("ragged matrix literal");
    for (const auto& x : row) {
      if (auto v = valuation(x, p)) shift = shift ? std::min(*shift, *v) : *v;
    }
  }
  PadicMatrix out(p, rows, cols, precision, shift.value_or(0));
  const mpz_class& mod = out.modulus();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& x = entries[i][j];
      if (x == 0) continue;
      mpz_class num = x.get_num();
      mpz_class den = x.get_den();
      const std::int64_t s = *shift;
      if (s > 0) {
        // x / p^s: the numerator is divisible by p^s unless the denominator absorbs it.
        const std::int64_t vn = valuation(num, p);
        const std::int64_t take = std::min(vn, s);
        num /= prime_power(p, take);
        den *= prime_power(p, s - take);
      } else if (s < 0) {
        const std::int64_t vd = valuation(den, p);
        const std::int64_t take = std::min(vd, -s);
        den /= prime_power(p, take);
        num *= prime_power(p, -s - take);
      }
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
        throw DenominatorNotInvertible("denominator divisible by p after shift extraction");
      }
      out.set_residue(i, j, num * inv);
    }
  }
  return out;
}

PadicMatrix matmul(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  if (!(a.prime() == b.prime())) throw DimensionMismatch("matmul: different primes");
  if (a.precision() != b.precision()) throw DimensionMismatch("matmul: different precisions");
  PadicMatrix out(a.prime(), a.rows(), b.cols(), a.precision(), a.shift() + b.shift());
  mpz_class acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      acc = 0;
      bool exact = true;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a.is_exact_zero(i, k) || b.is_exact_zero(k, j)) continue;
        exact = false;
        mpz_addmul(acc.get_mpz_t(), a.residue(i, k).get_mpz_t(), b.residue(k, j).get_mpz_t());
      }
      if (!exact) out.set_residue(i, j, acc);
    }
  }
  return out;
}

PadicMatrix transpose(const PadicMatrix& a) {
  PadicMatrix out(a.prime(), a.cols(), a.rows(), a.precision(), a.shift());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.is_exact_zero(i, j)) out.set_residue(j, i, a.residue(i, j));
    }
  }
  return out;
}

namespace {

PadicMatrix select_rows(const PadicMatrix& a, const std::vector<std::size_t>& rows) {
  PadicMatrix out(a.prime(), rows.size(), a.cols(), a.precision(), a.shift());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.is_exact_zero(rows[r], j)) out.set_residue(r, j, a.residue(rows[r], j));
    }
  }
  return out;
}

}  // namespace

PadicMatrix corner(const PadicMatrix& a, std::size_t i) {
  if (i < 1 || i > a.rows()) throw IndexOutOfRange("corner index out of range");
  std::vector<std::size_t> rows;
  for (std::size_t r = i - 1; r < a.rows(); ++r) rows.push_back(r);
  return select_rows(a, rows);
}

PadicMatrix delete_row(const PadicMatrix& a, std::size_t r) {
  if (r < 1 || r > a.rows()) throw IndexOutOfRange("row index out of range");
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (k != r - 1) rows.push_back(k);
  }
  return select_rows(a, rows);
}

PadicMatrix swap_rows(const PadicMatrix& a, std::size_t r, std::size_t s) {
  if (r < 1 || r > a.rows() || s < 1 || s > a.rows()) throw IndexOutOfRange("row index out of range");
  std::vector<std::size_t> rows(a.rows());
  for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = k;
  std::swap(rows[r - 1], rows[s - 1]);
  return select_rows(a, rows);
}

PadicMatrix diag_signature(const Signature& lambda, std::size_t rows, std::size_t cols, Prime p,
                           int precision) {
  if (lambda.size() != rows || rows > cols) {
    throw DimensionMismatch("diag_signature: need len(lambda) = rows <= cols");
  }
  if (rows == 0) return PadicMatrix(p, rows, cols, precision);
  const std::int64_t base = lambda.back();
  PadicMatrix out(p, rows, cols, precision, base);
  for (std::size_t i = 0; i < rows; ++i) out.set(i, i, prime_power(p, lambda[i] - base));
  return out;
}

PadicMatrix scale_rows(const PadicMatrix& a, const IntVector& exponents, int precision) {
  if (exponents.size() != a.rows()) throw DimensionMismatch("scale_rows: exponent count");
  PadicMatrix out(a.prime(), a.rows(), a.cols(), precision, a.shift());
  const bool binary = a.prime().value() == 2;
  mpz_class scaled;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (exponents[i] < 0) throw std::invalid_argument("scale_rows: negative exponent");
    const mpz_class factor = binary ? mpz_class(1) : prime_power(a.prime(), exponents[i]);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.is_exact_zero(i, j)) continue;
      if (binary) {
        mpz_mul_2exp(scaled.get_mpz_t(), a.residue(i, j).get_mpz_t(),
                     static_cast<mp_bitcnt_t>(exponents[i]));
      } else {
        scaled = a.residue(i, j) * factor;
      }
      out.set_residue(i, j, scaled);
    }
  }
  return out;
}

}  // namespace padic
