#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace padic {

using IntVector = std::vector<std::int64_t>;

// Non-increasing integer tuple. Parts may be negative.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::int64_t> parts);
  explicit Signature(IntVector parts);

  // c[k]: the constant signature (c, ..., c) of length k.
  static Signature constant(std::int64_t c, std::size_t k);

  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  std::int64_t operator[](std::size_t i) const { return parts_[i]; }
  std::int64_t front() const { return parts_.front(); }
  std::int64_t back() const { return parts_.back(); }
  const IntVector& parts() const { return parts_; }
  auto begin() const { return parts_.begin(); }
  auto end() const { return parts_.end(); }

  // |lambda| = sum of parts.
  std::int64_t weight() const;
  // n(lambda) = sum (i-1) lambda_i.
  std::int64_t n_statistic() const;
  // m_k(lambda) = #{i : lambda_i = k}.
  std::size_t multiplicity(std::int64_t k) const;
  bool is_constant() const;

  Signature shifted(std::int64_t c) const;

  std::string to_string() const;

  friend auto operator<=>(const Signature&, const Signature&) = default;
  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  IntVector parts_;
};

// mu <_P lambda: len(mu) = len(lambda) - 1 and lambda_i >= mu_i >= lambda_{i+1}.
bool interlaces(const Signature& mu, const Signature& lambda);

// Parses "1,0,-2" into a signature; throws std::invalid_argument when the
// parts are not non-increasing.
Signature parse_signature(const std::string& text);

}  // namespace padic
