#include "padic_rmt/ensembles.hpp"

#include <algorithm>
#include <stdexcept>

#include "padic_rmt/errors.hpp"
#include "padic_rmt/symplectic.hpp"
#include "residue_ops.hpp"

namespace padic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Largest c with p^c < 2^62, and p^c itself.
std::pair<int, std::uint64_t> digit_chunk(Prime p) {
  const auto pv = static_cast<std::uint64_t>(p.value());
  int c = 0;
  std::uint64_t pc = 1;
  while (pc <= (std::uint64_t{1} << 62) / pv) {
    pc *= pv;
    ++c;
  }
  return {c, pc};
}

std::int64_t spread(const Signature& s) { return s.empty() ? 0 : s.front() - s.back(); }

}  // namespace

mpz_class sample_uniform_residue(RngStream& rng, Prime p, int precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  RngStream child = rng.split();
  mpz_class out;
  if (p.value() == 2) {
    const std::size_t words = (static_cast<std::size_t>(precision) + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    for (auto& w : buf) w = child.next_u64();
    mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(precision));
    return out;
  }
  const auto [c, pc] = digit_chunk(p);
  mpz_class scale = 1;
  mpz_class chunk;
  for (int have = 0; have < precision; have += c) {
    const std::uint64_t digits = child.uniform_below(pc);
    mpz_import(chunk.get_mpz_t(), 1, -1, sizeof(digits), 0, 0, &digits);
    out += chunk * scale;
    scale *= pc;
  }
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), prime_power(p, precision).get_mpz_t());
  return out;
}

PadicMatrix sample_uniform_matrix(std::size_t rows, std::size_t cols, Prime p, int precision,
                                  RngStream& rng) {
  PadicMatrix out(p, rows, cols, precision);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.set_residue(i, j, sample_uniform_residue(rng, p, precision));
  }
  return out;
}

bool invertible_mod_p(const PadicMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const std::size_t n = a.rows();
  const std::int64_t p = a.prime().value();
  std::vector<std::int64_t> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = static_cast<std::int64_t>(mpz_fdiv_ui(a.residue(i, j).get_mpz_t(), p));
    }
  }
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r * n + c] == 0) ++r;
    if (r == n) return false;
    if (r != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[r * n + j], m[c * n + j]);
    }
    const std::int64_t ic = inv(m[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const std::int64_t f = m[i * n + c] * ic % p;
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        m[i * n + j] = ((m[i * n + j] - f * m[c * n + j]) % p + p) % p;
      }
    }
  }
  return true;
}

PadicMatrix sample_haar_gl(std::size_t n, Prime p, int precision, RngStream& rng) {
  while (true) {
    PadicMatrix a = sample_uniform_matrix(n, n, p, precision, rng);
    if (invertible_mod_p(a)) return a;
  }
}

PadicMatrix sample_bi_invariant(const Signature& lambda, std::size_t rows, std::size_t cols, Prime p,
                                int precision, RngStream& rng) {
  if (lambda.size() != rows || rows > cols) {
    throw DimensionMismatch("bi-invariant sample needs len(lambda) = rows <= cols");
  }
  const PadicMatrix u = sample_haar_gl(rows, p, precision, rng);
  const PadicMatrix v = sample_haar_gl(cols, p, precision, rng);
  const PadicMatrix d = diag_signature(lambda, rows, cols, p, precision);
  return matmul(matmul(u, d), v);
}

PadicMatrix sample_corner_of_haar(std::size_t n, std::size_t m, std::optional<std::int64_t> ambient,
                                  Prime p, int precision, RngStream& rng) {
  if (n > m) throw DimensionMismatch("corner of Haar needs n <= m");
  if (!ambient) return sample_uniform_matrix(n, m, p, precision, rng);
  if (*ambient < static_cast<std::int64_t>(m)) throw DimensionMismatch("corner of Haar needs m <= N");
  const PadicMatrix g = sample_haar_gl(static_cast<std::size_t>(*ambient), p, precision, rng);
  PadicMatrix out(p, n, m, precision);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.set_residue(i, j, g.residue(i, j));
  }
  return out;
}

void validate_law(const SNLaw& law) {
  if (law.empty()) throw std::invalid_argument("empty SN law");
  mpq_class total = 0;
  for (const auto& [sig, prob] : law) {
    if (sig.size() != law.front().first.size()) {
      throw std::invalid_argument("SN law mixes signature lengths");
    }
    if (prob <= 0) throw std::invalid_argument("SN law probabilities must be positive");
    total += prob;
  }
  if (total != 1) throw std::invalid_argument("SN law probabilities sum to " + total.get_str());
}

const Signature& draw_signature(const SNLaw& law, RngStream& rng) {
  if (law.size() == 1) return law.front().first;
  mpz_class denom = 1;
  for (const auto& entry : law) {
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), entry.second.get_den_mpz_t());
  }
  const mpz_class u = rng.uniform_below(denom);
  mpz_class cumulative = 0;
  for (const auto& [sig, prob] : law) {
    cumulative += prob.get_num() * (denom / prob.get_den());
    if (u < cumulative) return sig;
  }
  return law.back().first;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("ensemble dimension must be >= 1");
  if (precision_base < 1) throw std::invalid_argument("precision_base must be >= 1");
  std::visit(overloaded{
                 [&](const FixedSN& k) {
                   if (k.lambda.size() != n) throw std::invalid_argument("FixedSN: len(lambda) != n");
                 },
                 [&](const SNMixture& k) {
                   validate_law(k.components);
                   if (k.components.front().first.size() != n) {
                     throw std::invalid_argument("SNMixture: len(lambda) != n");
                   }
                 },
                 [&](const CornerOfHaar& k) {
                   if (k.ambient && *k.ambient < static_cast<std::int64_t>(n)) {
                     throw std::invalid_argument("CornerOfHaar: ambient dimension < n");
                   }
                 },
                 [&](const HaarEntries&) {},
                 [&](const GSpHaar& k) {
                   if (k.half < 1 || 2 * k.half != n) throw std::invalid_argument("GSpHaar: n must be 2h");
                 },
                 [&](const GSpFixedSN& k) {
                   if (k.lambda.size() != n || n % 2 != 0) {
                     throw std::invalid_argument("GSpFixedSN: len(lambda) must be n = 2h");
                   }
                   if (!is_balanced(k.lambda)) throw std::invalid_argument("GSpFixedSN: lambda not balanced");
                 },
                 [&](const DoublingDiagonal&) {
                   if (n != 2) throw std::invalid_argument("DoublingDiagonal is 2 x 2");
                 },
             },
             kind);
}

std::string EnsembleSpec::kind_name() const {
  return std::visit(overloaded{
                        [](const FixedSN&) { return std::string("FixedSN"); },
                        [](const SNMixture&) { return std::string("SNMixture"); },
                        [](const CornerOfHaar&) { return std::string("CornerOfHaar"); },
                        [](const HaarEntries&) { return std::string("HaarEntries"); },
                        [](const GSpHaar&) { return std::string("GSpHaar"); },
                        [](const GSpFixedSN&) { return std::string("GSpFixedSN"); },
                        [](const DoublingDiagonal&) { return std::string("DoublingDiagonal"); },
                    },
                    kind);
}

std::optional<SNLaw> EnsembleSpec::finite_law() const {
  if (const auto* f = std::get_if<FixedSN>(&kind)) return SNLaw{{f->lambda, mpq_class(1)}};
  if (const auto* m = std::get_if<SNMixture>(&kind)) return m->components;
  return std::nullopt;
}

bool EnsembleSpec::is_symplectic() const {
  return std::holds_alternative<GSpHaar>(kind) || std::holds_alternative<GSpFixedSN>(kind);
}

bool EnsembleSpec::is_iid() const { return !std::holds_alternative<DoublingDiagonal>(kind); }

int EnsembleSpec::step_precision(std::int64_t k) const {
  std::int64_t s = 0;
  if (const auto* f = std::get_if<FixedSN>(&kind)) s = spread(f->lambda);
  if (const auto* m = std::get_if<SNMixture>(&kind)) {
    for (const auto& entry : m->components) s = std::max(s, spread(entry.first));
  }
  if (const auto* g = std::get_if<GSpFixedSN>(&kind)) s = spread(g->lambda);
  if (std::holds_alternative<DoublingDiagonal>(kind)) {
    if (k < 1 || k > 40) throw std::invalid_argument("DoublingDiagonal supports 1 <= k <= 40");
    s = std::int64_t{1} << (k - 1);
  }
  return static_cast<int>(s) + precision_base;
}

PadicMatrix draw_step_matrix(const EnsembleSpec& spec, RngStream& rng, std::int64_t k,
                             int extra_precision) {
  const int precision = spec.step_precision(k) + extra_precision;
  const Prime p = spec.p;
  const std::size_t n = spec.n;
  return std::visit(
      overloaded{
          [&](const FixedSN& f) { return sample_bi_invariant(f.lambda, n, n, p, precision, rng); },
          [&](const SNMixture& m) {
            const Signature& lambda = draw_signature(m.components, rng);
            return sample_bi_invariant(lambda, n, n, p, precision, rng);
          },
          [&](const CornerOfHaar& c) { return sample_corner_of_haar(n, n, c.ambient, p, precision, rng); },
          [&](const HaarEntries&) { return sample_uniform_matrix(n, n, p, precision, rng); },
          [&](const GSpHaar& g) { return sample_haar_gsp(g.half, p, precision, rng).matrix; },
          [&](const GSpFixedSN& g) { return sample_bi_invariant_gsp(g.lambda, p, precision, rng).matrix; },
          [&](const DoublingDiagonal&) {
            PadicMatrix a(p, 2, 2, precision);
            a.set(0, 0, 1);
            a.set(1, 1, prime_power(p, std::int64_t{1} << (k - 1)));
            return a;
          },
      },
      spec.kind);
}

}  // namespace padic
