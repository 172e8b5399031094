#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/law.hpp"
#include "padic_rmt/prime.hpp"
#include "padic_rmt/signature.hpp"
#include "padic_rmt/unipoly.hpp"

namespace padic {

using SignatureDistribution = std::map<Signature, mpq_class>;
using Matrix = std::vector<std::vector<mpq_class>>;

// t = 1/p.
mpq_class t_of(Prime p);

// mu = levels[0] < levels[1] < ... < levels.back() = lambda, each link
// interlacing; weights[i] = |levels[i+1]| - |levels[i]|.
struct InterlacingChain {
  std::vector<Signature> levels;
  IntVector weights;
};

// prod over i with m_i(mu) = m_i(lambda) + 1 of (1 - t^{m_i(mu)}).
mpq_class psi(const Signature& lambda, const Signature& mu, const mpq_class& t);

void for_each_chain(const Signature& lambda, const Signature& mu,
                    const std::function<void(const InterlacingChain&)>& visit);
std::vector<InterlacingChain> enumerate_chains(const Signature& lambda, const Signature& mu,
                                               std::size_t steps);

// Skew P_{lambda/mu} at len(lambda) - len(mu) points, summed over interlacing
// chains level by level (no denominators, so repeated points are fine).
mpq_class hl_skew_eval(const Signature& lambda, const Signature& mu,
                       const std::vector<mpq_class>& points, const mpq_class& t);

// A specialization point c * x^xpow for generating functions in x.
struct MonomialPoint {
  mpq_class c;
  std::int64_t xpow = 0;
};
UniPoly hl_skew_eval_poly(const Signature& lambda, const Signature& mu,
                          const std::vector<MonomialPoint>& points, const mpq_class& t);

mpq_class hl_p_eval(const Signature& lambda, const std::vector<mpq_class>& points, const mpq_class& t);

// Symmetrization formula; needs pairwise distinct points.
mpq_class hl_p_symmetrized_oracle(const Signature& lambda, const std::vector<mpq_class>& points,
                                  const mpq_class& t);

// P_lambda(x, xt, ..., xt^{n-1}; t) in closed form.
mpq_class principal_specialization(const Signature& lambda, const mpq_class& x, const mpq_class& t);

// Law of SN of the corner one row shorter, given SN(mu_top) of the current corner.
SignatureDistribution corner_distribution(const Signature& mu_top, const mpq_class& t);

// Keys are (mu^(2), ..., mu^(n)).
std::map<std::vector<Signature>, mpq_class> joint_corner_distribution(const Signature& mu1,
                                                                      const mpq_class& t);

// Law of SN(A^(k)) for 1 <= k <= n.
SignatureDistribution kth_corner_distribution(const Signature& mu1, std::size_t k, const mpq_class& t);

// E x^{|SN(A^(j))|} as a Laurent polynomial in x.
UniPoly corner_weight_pgf(const Signature& mu1, std::size_t j, const mpq_class& t);

// E|SN(A^(j))| by differentiating the generating function.
mpq_class expected_corner_weight(const SNLaw& law, std::size_t j, const mpq_class& t);
// The same expectation summed directly over kth_corner_distribution.
mpq_class expected_corner_weight_direct(const SNLaw& law, std::size_t j, const mpq_class& t);

// (E|SN^(1)| - E|SN^(2)|, ..., E|SN^(n-1)| - E|SN^(n)|, E|SN^(n)|).
std::vector<mpq_class> lln_prediction(const SNLaw& law, const mpq_class& t);

struct CornerCovariance {
  Matrix sigma;        // Cov(|SN(A^(i))|, |SN(A^(j))|)
  Matrix l_sigma_lt;   // L Sigma L^T with L upper bidiagonal (1, -1)
};
CornerCovariance corner_weight_covariance(const SNLaw& law, const mpq_class& t);

// All principal minors are >= 0.
bool positive_semidefinite(const Matrix& m);

struct CornerInequalityReport {
  bool degenerate = false;  // every signature in the support is constant
  std::vector<mpq_class> gaps;  // gaps[i] is the i-th LLN component
  bool strict = false;
};
// Checks gaps[n-1] < gaps[n-2] < ... < gaps[0]; throws InequalityViolated
// when a non-degenerate law fails.
CornerInequalityReport verify_corner_inequality(const SNLaw& law, const mpq_class& t);

// Q_lambda = b_lambda(t) P_lambda with b_lambda = prod over positive parts i of
// phi_{m_i}(t). lambda needs nonnegative parts; it is padded with zeros to the
// number of points, and Q vanishes when it has more positive parts than points.
mpq_class hl_q_eval(const Signature& lambda, const std::vector<mpq_class>& points, const mpq_class& t);

// prod_{i,j} (1 - t a_i b_j) / (1 - a_i b_j).
mpq_class cauchy_kernel(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                        const mpq_class& t);

enum class QExponentStart {
  // Q at t^{m-n+1}, ..., t^{N-n} (N - m points).
  Shifted,
  // Q at t^{m-n-1}, ..., t^{N-n}, the display read literally.
  Literal,
};

struct TruncatedDistribution {
  SignatureDistribution probs;
  std::int64_t cutoff = 0;   // largest lambda_1 included
  mpq_class omitted_mass;    // 1 - total, exact
};

// Law of SN of the top n x m corner of a Haar element of GL_N(Z_p), over
// nonnegative signatures with lambda_1 <= cutoff. The cutoff doubles until the
// omitted mass drops below tail.
TruncatedDistribution hl_haar_corner_measure(std::size_t n, std::size_t m, std::int64_t ambient, Prime p,
                                             double tail = 1e-6,
                                             QExponentStart convention = QExponentStart::Shifted);

// E x^{|SN^(j)| - |SN^(j+1)|} for the n x n corner of Haar GL_N(Z_p).
mpq_class haar_corner_increment_pgf(std::size_t n, std::int64_t ambient, std::size_t j,
                                    const mpq_class& t, const mpq_class& x);
// Its derivative at x = 1; ambient = nullopt is N = infinity.
mpq_class haar_corner_increment_mean(std::size_t n, std::optional<std::int64_t> ambient, std::size_t j,
                                     const mpq_class& t);
std::vector<mpq_class> haar_corner_lln_prediction(std::size_t n, std::optional<std::int64_t> ambient,
                                                  const mpq_class& t);

}  // namespace padic
