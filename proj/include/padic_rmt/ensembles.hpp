#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/law.hpp"
#include "padic_rmt/padic_matrix.hpp"
#include "padic_rmt/prime.hpp"
#include "padic_rmt/rng.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

struct FixedSN {
  Signature lambda;
};
struct SNMixture {
  SNLaw components;
};
// Top n x n block of a Haar element of GL_ambient(Z_p); nullopt = infinity,
// i.e. i.i.d. uniform entries.
struct CornerOfHaar {
  std::optional<std::int64_t> ambient;
};
struct HaarEntries {};
// Haar on GSp_{2h}(Z_p); the matrix dimension is n = 2h.
struct GSpHaar {
  std::size_t half;
};
// U diag(p^lambda) V with U, V Haar on GSp_{2h}(Z_p); lambda balanced.
struct GSpFixedSN {
  Signature lambda;
};
// A_k = diag(1, p^(2^(k-1))): deterministic, not identically distributed.
struct DoublingDiagonal {};

using EnsembleKind =
    std::variant<FixedSN, SNMixture, CornerOfHaar, HaarEntries, GSpHaar, GSpFixedSN, DoublingDiagonal>;

struct EnsembleSpec {
  Prime p{2};
  std::size_t n = 2;
  int precision_base = 32;
  EnsembleKind kind = FixedSN{Signature{1, 0}};

  // Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
  std::string kind_name() const;
  // The SN law of one step when it is finitely supported and identically
  // distributed over GL (FixedSN, SNMixture).
  std::optional<SNLaw> finite_law() const;
  bool is_symplectic() const;
  bool is_iid() const;
  // Working precision of the k-th step matrix before any escalation.
  int step_precision(std::int64_t k) const;
};

// N uniform base-p digits. Draws a child stream and fills p-adic chunks from
// the low end, so a larger N extends the same digits.
mpz_class sample_uniform_residue(RngStream& rng, Prime p, int precision);

PadicMatrix sample_uniform_matrix(std::size_t rows, std::size_t cols, Prime p, int precision,
                                  RngStream& rng);

// Determinant of the reduction mod p is nonzero.
bool invertible_mod_p(const PadicMatrix& a);

PadicMatrix sample_haar_gl(std::size_t n, Prime p, int precision, RngStream& rng);

PadicMatrix sample_bi_invariant(const Signature& lambda, std::size_t rows, std::size_t cols, Prime p,
                                int precision, RngStream& rng);

// ambient = nullopt stands for N = infinity.
PadicMatrix sample_corner_of_haar(std::size_t n, std::size_t m, std::optional<std::int64_t> ambient,
                                  Prime p, int precision, RngStream& rng);

// Draws A_k. extra_precision is added on top of the spec's precision rule
// (used by precision escalation; the digits drawn are a prefix-consistent
// extension, so the same rng yields the same matrix at every precision).
PadicMatrix draw_step_matrix(const EnsembleSpec& spec, RngStream& rng, std::int64_t k = 1,
                             int extra_precision = 0);

// Draws a signature from a finite law using exact rational thresholds.
const Signature& draw_signature(const SNLaw& law, RngStream& rng);

// Probabilities positive and summing to exactly 1.
void validate_law(const SNLaw& law);

}  // namespace padic
