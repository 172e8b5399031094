#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace padic {

// Laurent polynomial in x with exact rational coefficients. Zero
// coefficients are never stored.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const mpq_class& c);  // NOLINT: constants convert implicitly
  UniPoly(int c) : UniPoly(mpq_class(c)) {}  // NOLINT

  static UniPoly monomial(const mpq_class& c, std::int64_t e);

  const std::map<std::int64_t, mpq_class>& terms() const { return terms_; }
  mpq_class coefficient(std::int64_t e) const;
  bool is_zero() const { return terms_.empty(); }

  mpq_class eval(const mpq_class& x) const;
  UniPoly derivative() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const mpq_class& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(std::int64_t e, const mpq_class& c);

  std::map<std::int64_t, mpq_class> terms_;
};

// q^e for e of any sign; throws std::domain_error for 0^negative.
mpq_class rational_pow(const mpq_class& q, std::int64_t e);

}  // namespace padic
