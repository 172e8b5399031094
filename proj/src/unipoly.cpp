#include "padic_rmt/unipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace padic {

mpq_class rational_pow(const mpq_class& q, std::int64_t e) {
  if (e == 0) return 1;
  if (q == 0) {
    if (e < 0) throw std::domain_error("zero to a negative power");
    return 0;
  }
  const auto u = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), u);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), u);
  mpq_class out = e > 0 ? mpq_class(num, den) : mpq_class(den, num);
  out.canonicalize();
  return out;
}

UniPoly::UniPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace(0, c);
}

UniPoly UniPoly::monomial(const mpq_class& c, std::int64_t e) {
  UniPoly out;
  if (c != 0) out.terms_.emplace(e, c);
  return out;
}

mpq_class UniPoly::coefficient(std::int64_t e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void UniPoly::add_term(std::int64_t e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpq_class UniPoly::eval(const mpq_class& x) const {
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) s += c * rational_pow(x, e);
  return s;
}

UniPoly UniPoly::derivative() const {
  UniPoly out;
  for (const auto& [e, c] : terms_) {
    if (e != 0) out.add_term(e - 1, c * mpq_class(mpz_class(e)));
  }
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  UniPoly out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

UniPoly& UniPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& term : terms_) term.second *= c;
  return *this;
}

std::string UniPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.get_str() << ")";
    if (e != 0) os << "*x^" << e;
  }
  return os.str();
}

}  // namespace padic
