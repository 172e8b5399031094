#include "padic_rmt/signature.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace padic {

namespace {

void check_non_increasing(const IntVector& parts) {
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] > parts[i - 1]) {
      throw std::invalid_argument("signature parts must be non-increasing");
    }
  }
}

}  // namespace

Signature::Signature(std::initializer_list<std::int64_t> parts) : parts_(parts) {
  check_non_increasing(parts_);
}

Signature::Signature(IntVector parts) : parts_(std::move(parts)) { check_non_increasing(parts_); }

Signature Signature::constant(std::int64_t c, std::size_t k) { return Signature(IntVector(k, c)); }

std::int64_t Signature::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
}

std::int64_t Signature::n_statistic() const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<std::int64_t>(i) * parts_[i];
  return s;
}

std::size_t Signature::multiplicity(std::int64_t k) const {
  std::size_t m = 0;
  for (auto x : parts_) m += (x == k);
  return m;
}

bool Signature::is_constant() const { return parts_.empty() || parts_.front() == parts_.back(); }

Signature Signature::shifted(std::int64_t c) const {
  IntVector out = parts_;
  for (auto& x : out) x += c;
  return Signature(std::move(out));
}

std::string Signature::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  os << ')';
  return os.str();
}

bool interlaces(const Signature& mu, const Signature& lambda) {
  if (mu.size() + 1 != lambda.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (lambda[i] < mu[i] || mu[i] < lambda[i + 1]) return false;
  }
  return true;
}

Signature parse_signature(const std::string& text) {
  IntVector parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    parts.push_back(std::stoll(item, &used));
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("bad signature part: " + item);
    }
  }
  return Signature(std::move(parts));
}

}  // namespace padic
