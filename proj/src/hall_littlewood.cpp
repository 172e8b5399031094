#include "padic_rmt/hall_littlewood.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "padic_rmt/errors.hpp"

namespace padic {

namespace {

mpq_class one_minus_t_pow(const mpq_class& t, std::int64_t m) { return 1 - rational_pow(t, m); }

// phi_m(t) = (1 - t)(1 - t^2)...(1 - t^m)
mpq_class phi(const mpq_class& t, std::int64_t m) {
  mpq_class out = 1;
  for (std::int64_t j = 1; j <= m; ++j) out *= one_minus_t_pow(t, j);
  return out;
}

// Multiplicities m_i over the distinct parts.
std::map<std::int64_t, std::int64_t> multiplicities(const IntVector& parts) {
  std::map<std::int64_t, std::int64_t> m;
  for (auto x : parts) ++m[x];
  return m;
}

mpq_class psi_unchecked(const IntVector& lambda, const IntVector& mu, const mpq_class& t) {
  const auto ml = multiplicities(lambda);
  const auto mm = multiplicities(mu);
  mpq_class out = 1;
  for (const auto& [part, count] : mm) {
    auto it = ml.find(part);
    const std::int64_t in_lambda = it == ml.end() ? 0 : it->second;
    if (count == in_lambda + 1) out *= one_minus_t_pow(t, count);
  }
  return out;
}

std::int64_t weight(const IntVector& x) { return std::accumulate(x.begin(), x.end(), std::int64_t{0}); }

// Candidates nu of length len(kappa) - 1 with mu <_P ... <_P nu <_P kappa
// still reachable: kappa_r >= nu_r >= kappa_{r+1}, nu_r >= mu_r and
// nu_{r+d} <= mu_r where d = len(nu) - len(mu).
void for_each_child(const IntVector& kappa, const IntVector& mu,
                    const std::function<void(const IntVector&)>& visit) {
  const std::size_t len = kappa.size() - 1;
  const std::size_t d = len - mu.size();
  IntVector nu(len);
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == len) {
      visit(nu);
      return;
    }
    std::int64_t lo = kappa[r + 1];
    std::int64_t hi = kappa[r];
    if (r < mu.size()) lo = std::max(lo, mu[r]);
    if (r >= d) hi = std::min(hi, mu[r - d]);
    for (std::int64_t x = hi; x >= lo; --x) {
      nu[r] = x;
      rec(r + 1);
    }
  };
  rec(0);
}

// Sum over chains from lambda down to mu of prod_links psi * point_i^{weight},
// where the link into level l (from l-1) uses point index l - 1 - len(mu).
template <class V, class PowFn>
V skew_dp(const Signature& lambda, const Signature& mu, const mpq_class& t, PowFn pow_at) {
  if (lambda.size() < mu.size()) throw DimensionMismatch("skew: len(lambda) < len(mu)");
  const std::size_t l0 = mu.size();
  std::map<IntVector, V> level{{lambda.parts(), V(1)}};
  for (std::size_t l = lambda.size(); l > l0; --l) {
    const std::size_t idx = l - 1 - l0;
    std::map<IntVector, V> next;
    for (const auto& [kappa, value] : level) {
      const std::int64_t wk = weight(kappa);
      for_each_child(kappa, mu.parts(), [&](const IntVector& nu) {
        V term = pow_at(idx, wk - weight(nu));
        term *= psi_unchecked(kappa, nu, t);
        term *= value;
        auto [it, inserted] = next.try_emplace(nu, term);
        if (!inserted) it->second += term;
      });
    }
    level = std::move(next);
  }
  auto it = level.find(mu.parts());
  return it == level.end() ? V(0) : it->second;
}

mpq_class point_power(const mpq_class& x, std::int64_t w) {
  if (x == 0 && w < 0) throw ZeroPointWithNegativeWeight("zero point with negative chain weight");
  return rational_pow(x, w);
}

std::vector<mpq_class> geometric_points(const mpq_class& t, std::int64_t from, std::int64_t to) {
  std::vector<mpq_class> out;
  for (std::int64_t e = from; e <= to; ++e) out.push_back(rational_pow(t, e));
  return out;
}

// All length-len signatures with hi[r] >= nu_r >= lo[r].
void for_each_in_box(const IntVector& lo, const IntVector& hi, const std::function<void(const IntVector&)>& visit) {
  const std::size_t len = lo.size();
  IntVector nu(len);
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == len) {
      visit(nu);
      return;
    }
    std::int64_t top = hi[r];
    if (r > 0) top = std::min(top, nu[r - 1]);
    for (std::int64_t x = top; x >= lo[r]; --x) {
      nu[r] = x;
      rec(r + 1);
    }
  };
  rec(0);
}

void check_t(const mpq_class& t) {
  if (t <= 0 || t >= 1) throw std::invalid_argument("t must lie in (0, 1)");
}

}  // namespace

mpq_class t_of(Prime p) { return mpq_class(1, static_cast<unsigned long>(p.value())); }

mpq_class psi(const Signature& lambda, const Signature& mu, const mpq_class& t) {
  if (!interlaces(mu, lambda)) {
    throw NotInterlacing(mu.to_string() + " does not interlace " + lambda.to_string());
  }
  return psi_unchecked(lambda.parts(), mu.parts(), t);
}

void for_each_chain(const Signature& lambda, const Signature& mu,
                    const std::function<void(const InterlacingChain&)>& visit) {
  if (lambda.size() < mu.size()) return;
  std::vector<IntVector> stack{lambda.parts()};
  std::function<void()> rec = [&]() {
    const IntVector& top = stack.back();
    if (top.size() == mu.size()) {
      if (top != mu.parts()) return;
      InterlacingChain chain;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) chain.levels.emplace_back(*it);
      for (std::size_t i = 1; i < chain.levels.size(); ++i) {
        chain.weights.push_back(chain.levels[i].weight() - chain.levels[i - 1].weight());
      }
      visit(chain);
      return;
    }
    const IntVector kappa = top;
    for_each_child(kappa, mu.parts(), [&](const IntVector& nu) {
      stack.push_back(nu);
      rec();
      stack.pop_back();
    });
  };
  rec();
}

std::vector<InterlacingChain> enumerate_chains(const Signature& lambda, const Signature& mu,
                                               std::size_t steps) {
  if (lambda.size() != mu.size() + steps) throw DimensionMismatch("enumerate_chains: length gap != steps");
  std::vector<InterlacingChain> out;
  for_each_chain(lambda, mu, [&](const InterlacingChain& c) { out.push_back(c); });
  return out;
}

mpq_class hl_skew_eval(const Signature& lambda, const Signature& mu, const std::vector<mpq_class>& points,
                       const mpq_class& t) {
  if (points.size() + mu.size() != lambda.size()) throw DimensionMismatch("skew eval: wrong number of points");
  return skew_dp<mpq_class>(lambda, mu, t,
                            [&](std::size_t i, std::int64_t w) { return point_power(points[i], w); });
}

UniPoly hl_skew_eval_poly(const Signature& lambda, const Signature& mu, const std::vector<MonomialPoint>& points,
                          const mpq_class& t) {
  if (points.size() + mu.size() != lambda.size()) throw DimensionMismatch("skew eval: wrong number of points");
  return skew_dp<UniPoly>(lambda, mu, t, [&](std::size_t i, std::int64_t w) {
    return UniPoly::monomial(point_power(points[i].c, w), points[i].xpow * w);
  });
}

mpq_class hl_p_eval(const Signature& lambda, const std::vector<mpq_class>& points, const mpq_class& t) {
  return hl_skew_eval(lambda, Signature{}, points, t);
}

mpq_class hl_p_symmetrized_oracle(const Signature& lambda, const std::vector<mpq_class>& points,
                                  const mpq_class& t) {
  const std::size_t n = lambda.size();
  if (points.size() != n) throw DimensionMismatch("oracle: wrong number of points");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) throw RepeatedPoints("symmetrization needs distinct points");
    }
  }
  std::vector<std::size_t> w(n);
  std::iota(w.begin(), w.end(), 0);
  mpq_class total = 0;
  do {
    mpq_class term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= point_power(points[w[i]], lambda[i]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const mpq_class& xi = points[w[i]];
        const mpq_class& xj = points[w[j]];
        term *= (xi - t * xj) / (xi - xj);
      }
    }
    total += term;
  } while (std::next_permutation(w.begin(), w.end()));
  // v_lambda(t) = prod over distinct parts of prod_{j<=m} (1 - t^j) / (1 - t)
  mpq_class v = 1;
  for (const auto& [part, m] : multiplicities(lambda.parts())) {
    v *= phi(t, m) / rational_pow(1 - t, m);
  }
  return total / v;
}

mpq_class principal_specialization(const Signature& lambda, const mpq_class& x, const mpq_class& t) {
  const auto n = static_cast<std::int64_t>(lambda.size());
  mpq_class out = point_power(x, lambda.weight()) * rational_pow(t, lambda.n_statistic()) * phi(t, n);
  for (const auto& [part, m] : multiplicities(lambda.parts())) out /= phi(t, m);
  return out;
}

SignatureDistribution kth_corner_distribution(const Signature& mu1, std::size_t k, const mpq_class& t) {
  check_t(t);
  const std::size_t n = mu1.size();
  if (k < 1 || k > n) throw IndexOutOfRange("corner level out of range");
  SignatureDistribution out;
  if (k == 1) {
    out.emplace(mu1, mpq_class(1));
    return out;
  }
  const mpq_class denom = hl_p_eval(mu1, geometric_points(t, 0, static_cast<std::int64_t>(n) - 1), t);
  const auto lower_pts = geometric_points(t, 0, static_cast<std::int64_t>(k) - 2);
  const auto upper_pts = geometric_points(t, static_cast<std::int64_t>(k) - 1, static_cast<std::int64_t>(n) - 1);
  const std::size_t len = n - k + 1;
  IntVector lo(len), hi(len);
  for (std::size_t r = 0; r < len; ++r) {
    hi[r] = mu1[r];
    lo[r] = mu1[r + k - 1];
  }
  for_each_in_box(lo, hi, [&](const IntVector& parts) {
    const Signature nu(parts);
    const mpq_class skew = hl_skew_eval(mu1, nu, lower_pts, t);
    if (skew == 0) return;
    const mpq_class prob = skew * hl_p_eval(nu, upper_pts, t) / denom;
    if (prob != 0) out.emplace(nu, prob);
  });
  return out;
}

SignatureDistribution corner_distribution(const Signature& mu_top, const mpq_class& t) {
  if (mu_top.size() < 2) throw DimensionMismatch("corner distribution needs at least two parts");
  return kth_corner_distribution(mu_top, 2, t);
}

std::map<std::vector<Signature>, mpq_class> joint_corner_distribution(const Signature& mu1, const mpq_class& t) {
  check_t(t);
  const std::size_t n = mu1.size();
  const mpq_class denom = hl_p_eval(mu1, geometric_points(t, 0, static_cast<std::int64_t>(n) - 1), t);
  std::map<std::vector<Signature>, mpq_class> out;
  for_each_chain(mu1, Signature{}, [&](const InterlacingChain& chain) {
    // chain.levels[l] has length l; mu^(i) = levels[n - i + 1].
    mpq_class prob = 1;
    for (std::size_t l = 1; l <= n; ++l) {
      const std::int64_t exponent = static_cast<std::int64_t>(n - l);
      prob *= point_power(rational_pow(t, exponent), chain.weights[l - 1]);
      if (l >= 2) prob *= psi_unchecked(chain.levels[l].parts(), chain.levels[l - 1].parts(), t);
    }
    std::vector<Signature> key;
    for (std::size_t i = 2; i <= n; ++i) key.push_back(chain.levels[n - i + 1]);
    out[key] += prob / denom;
  });
  return out;
}

UniPoly corner_weight_pgf(const Signature& mu1, std::size_t j, const mpq_class& t) {
  check_t(t);
  const std::size_t n = mu1.size();
  if (j < 1 || j > n) throw IndexOutOfRange("corner index out of range");
  std::vector<MonomialPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({rational_pow(t, static_cast<std::int64_t>(i)), i + 1 >= j ? 1 : 0});
  }
  UniPoly num = hl_skew_eval_poly(mu1, Signature{}, pts, t);
  const mpq_class denom = hl_p_eval(mu1, geometric_points(t, 0, static_cast<std::int64_t>(n) - 1), t);
  num *= mpq_class(1 / denom);
  return num;
}

mpq_class expected_corner_weight(const SNLaw& law, std::size_t j, const mpq_class& t) {
  mpq_class out = 0;
  for (const auto& [mu, prob] : law) out += prob * corner_weight_pgf(mu, j, t).derivative().eval(1);
  return out;
}

mpq_class expected_corner_weight_direct(const SNLaw& law, std::size_t j, const mpq_class& t) {
  mpq_class out = 0;
  for (const auto& [mu, prob] : law) {
    for (const auto& [nu, q] : kth_corner_distribution(mu, j, t)) out += prob * q * mpq_class(mpz_class(nu.weight()));
  }
  return out;
}

std::vector<mpq_class> lln_prediction(const SNLaw& law, const mpq_class& t) {
  const std::size_t n = law.front().first.size();
  std::vector<mpq_class> e(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) e[j - 1] = expected_corner_weight(law, j, t);
  std::vector<mpq_class> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = e[i] - e[i + 1];
  return out;
}

CornerCovariance corner_weight_covariance(const SNLaw& law, const mpq_class& t) {
  const std::size_t n = law.front().first.size();
  std::vector<mpq_class> mean(n, 0);
  Matrix second(n, std::vector<mpq_class>(n, 0));
  for (const auto& [mu, prob] : law) {
    for (const auto& [chain, q] : joint_corner_distribution(mu, t)) {
      std::vector<mpq_class> w(n);
      w[0] = mpq_class(mpz_class(mu.weight()));
      for (std::size_t i = 1; i < n; ++i) w[i] = mpq_class(mpz_class(chain[i - 1].weight()));
      const mpq_class pq = prob * q;
      for (std::size_t i = 0; i < n; ++i) {
        mean[i] += pq * w[i];
        for (std::size_t j = 0; j < n; ++j) second[i][j] += pq * w[i] * w[j];
      }
    }
  }
  CornerCovariance out;
  out.sigma.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.sigma[i][j] = second[i][j] - mean[i] * mean[j];
  }
  // (L S)_{ij} = S_ij - S_{i+1,j}; (L S L^T)_{ij} = (LS)_ij - (LS)_{i,j+1}.
  Matrix ls(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ls[i][j] = out.sigma[i][j] - (i + 1 < n ? out.sigma[i + 1][j] : 0);
  }
  out.l_sigma_lt.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.l_sigma_lt[i][j] = ls[i][j] - (j + 1 < n ? ls[i][j + 1] : 0);
  }
  return out;
}

namespace {

mpq_class exact_det(Matrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const mpq_class f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

bool positive_semidefinite(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    }
    Matrix sub(idx.size(), std::vector<mpq_class>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = m[idx[a]][idx[b]];
    }
    if (exact_det(sub) < 0) return false;
  }
  return true;
}

CornerInequalityReport verify_corner_inequality(const SNLaw& law, const mpq_class& t) {
  CornerInequalityReport report;
  report.gaps = lln_prediction(law, t);
  report.degenerate = std::all_of(law.begin(), law.end(), [](const auto& e) { return e.first.is_constant(); });
  if (report.degenerate) return report;
  report.strict = true;
  for (std::size_t i = 0; i + 1 < report.gaps.size(); ++i) {
    if (!(report.gaps[i + 1] < report.gaps[i])) report.strict = false;
  }
  if (!report.strict) throw InequalityViolated("corner expectations are not strictly ordered");
  return report;
}

mpq_class hl_q_eval(const Signature& lambda, const std::vector<mpq_class>& points, const mpq_class& t) {
  if (!lambda.empty() && lambda.back() < 0) throw std::invalid_argument("Q needs nonnegative parts");
  IntVector positive;
  for (auto x : lambda) {
    if (x > 0) positive.push_back(x);
  }
  if (positive.size() > points.size()) return 0;
  mpq_class b = 1;
  for (const auto& [part, m] : multiplicities(positive)) b *= phi(t, m);
  IntVector padded = positive;
  padded.resize(points.size(), 0);
  return b * hl_p_eval(Signature(padded), points, t);
}

mpq_class cauchy_kernel(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, const mpq_class& t) {
  mpq_class out = 1;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const mpq_class xy = x * y;
      if (xy == 1) throw KernelPole("Cauchy kernel pole: a_i b_j = 1");
      out *= (1 - t * xy) / (1 - xy);
    }
  }
  return out;
}

TruncatedDistribution hl_haar_corner_measure(std::size_t n, std::size_t m, std::int64_t ambient, Prime p,
                                             double tail, QExponentStart convention) {
  if (n < 1 || n > m || static_cast<std::int64_t>(m) > ambient) {
    throw DimensionMismatch("Haar corner measure needs 1 <= n <= m <= N");
  }
  const mpq_class t = t_of(p);
  const auto in = static_cast<std::int64_t>(n);
  const auto im = static_cast<std::int64_t>(m);
  const std::int64_t start = convention == QExponentStart::Shifted ? im - in + 1 : im - in - 1;
  const auto a = geometric_points(t, 0, in - 1);
  const auto b = geometric_points(t, start, ambient - in);
  const mpq_class kernel = cauchy_kernel(a, b, t);

  TruncatedDistribution out;
  mpq_class total = 0;
  const mpq_class tail_q(tail);
  std::int64_t done = -1;
  for (std::int64_t cutoff = 8; cutoff <= 512; cutoff *= 2) {
    for_each_in_box(IntVector(n, 0), IntVector(n, cutoff), [&](const IntVector& parts) {
      if (parts.front() <= done) return;
      const Signature lambda(parts);
      const mpq_class prob = principal_specialization(lambda, 1, t) * hl_q_eval(lambda, b, t) / kernel;
      if (prob != 0) {
        out.probs.emplace(lambda, prob);
        total += prob;
      }
    });
    done = cutoff;
    out.cutoff = cutoff;
    out.omitted_mass = 1 - total;
    if (out.omitted_mass < tail_q) break;
  }
  return out;
}

mpq_class haar_corner_increment_pgf(std::size_t n, std::int64_t ambient, std::size_t j, const mpq_class& t,
                                    const mpq_class& x) {
  if (j < 1 || j > n) throw IndexOutOfRange("increment index out of range");
  const auto ij = static_cast<std::int64_t>(j);
  const auto b = geometric_points(t, ij, ambient - static_cast<std::int64_t>(n) + ij - 1);
  return cauchy_kernel({x}, b, t) / cauchy_kernel({mpq_class(1)}, b, t);
}

mpq_class haar_corner_increment_mean(std::size_t n, std::optional<std::int64_t> ambient, std::size_t j,
                                     const mpq_class& t) {
  if (j < 1 || j > n) throw IndexOutOfRange("increment index out of range");
  const auto ij = static_cast<std::int64_t>(j);
  // d/dx log of (1 - t x b) / (1 - x b) at x = 1 is b/(1-b) - tb/(1-tb); over
  // b = t^i this telescopes to f(i) - f(i+1) with f(i) = t^i / (1 - t^i).
  auto f = [&](std::int64_t i) {
    const mpq_class ti = rational_pow(t, i);
    return mpq_class(ti / (1 - ti));
  };
  if (!ambient) return f(ij);
  mpq_class out = 0;
  for (std::int64_t i = ij; i <= *ambient - static_cast<std::int64_t>(n) + ij - 1; ++i) {
    const mpq_class b = rational_pow(t, i);
    out += b / (1 - b) - t * b / (1 - t * b);
  }
  return out;
}

std::vector<mpq_class> haar_corner_lln_prediction(std::size_t n, std::optional<std::int64_t> ambient,
                                                  const mpq_class& t) {
  std::vector<mpq_class> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back(haar_corner_increment_mean(n, ambient, j, t));
  return out;
}

}  // namespace padic
