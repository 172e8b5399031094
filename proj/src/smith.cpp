#include "padic_rmt/smith.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include "padic_rmt/errors.hpp"
#include "residue_ops.hpp"

namespace padic {

namespace {

void divexact_prime_power(mpz_class& out, const mpz_class& x, Prime p, std::int64_t e) {
  if (p.value() == 2) {
    mpz_tdiv_q_2exp(out.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_divexact(out.get_mpz_t(), x.get_mpz_t(), prime_power(p, e).get_mpz_t());
  }
}

}  // namespace

Signature smith_singular_numbers(const PadicMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (rows > cols) throw DimensionMismatch("singular numbers need rows <= cols");
  if (rows == 0) return Signature{};

  const Prime p = a.prime();
  const int precision = a.precision();
  const mpz_class& modulus = a.modulus();

  std::vector<mpz_class> work(rows * cols);
  std::vector<unsigned char> exact(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      work[i * cols + j] = a.residue(i, j);
      exact[i * cols + j] = a.is_exact_zero(i, j);
    }
  }
  std::vector<std::size_t> live_rows(rows);
  std::vector<std::size_t> live_cols(cols);
  for (std::size_t i = 0; i < rows; ++i) live_rows[i] = i;
  for (std::size_t j = 0; j < cols; ++j) live_cols[j] = j;

  IntVector pivots;
  pivots.reserve(rows);
  mpz_class unit, inverse, q, t;

  while (!live_rows.empty()) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::size_t pr = 0, pc = 0;
    bool found = false;
    for (std::size_t ri = 0; ri < live_rows.size(); ++ri) {
      for (std::size_t ci = 0; ci < live_cols.size(); ++ci) {
        const mpz_class& x = work[live_rows[ri] * cols + live_cols[ci]];
        if (x == 0) continue;
        const std::int64_t v = valuation(x, p);
        if (v < best) {
          best = v;
          pr = ri;
          pc = ci;
          found = true;
          if (v == 0) break;
        }
      }
      if (found && best == 0) break;
    }
    if (!found) {
      for (std::size_t r : live_rows) {
        for (std::size_t c : live_cols) {
          if (!exact[r * cols + c]) {
            throw PrecisionExhausted("remaining block is zero to precision " +
                                     std::to_string(precision));
          }
        }
      }
      throw SingularMatrix("matrix is rank deficient");
    }

    pivots.push_back(best);
    const std::size_t r = live_rows[pr];
    const std::size_t c = live_cols[pc];
    divexact_prime_power(unit, work[r * cols + c], p, best);
    mpz_invert(inverse.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());

    for (std::size_t ri = 0; ri < live_rows.size(); ++ri) {
      if (ri == pr) continue;
      const std::size_t i = live_rows[ri];
      const mpz_class& aic = work[i * cols + c];
      const bool ic_exact = exact[i * cols + c];
      if (aic == 0) {
        if (ic_exact) continue;
        for (std::size_t j : live_cols) {
          if (j != c) exact[i * cols + j] &= exact[r * cols + j];
        }
        continue;
      }
      divexact_prime_power(q, aic, p, best);
      q *= inverse;
      detail::reduce_in_place(q, p, precision, modulus);
      for (std::size_t j : live_cols) {
        if (j == c || exact[r * cols + j]) continue;
        mpz_class& aij = work[i * cols + j];
        mpz_submul(aij.get_mpz_t(), q.get_mpz_t(), work[r * cols + j].get_mpz_t());
        detail::reduce_in_place(aij, p, precision, modulus);
        exact[i * cols + j] = 0;
      }
    }
    live_rows.erase(live_rows.begin() + static_cast<std::ptrdiff_t>(pr));
    live_cols.erase(live_cols.begin() + static_cast<std::ptrdiff_t>(pc));
  }

  std::sort(pivots.begin(), pivots.end(), std::greater<>());
  for (auto& x : pivots) x += a.shift();
  return Signature(std::move(pivots));
}

namespace {

mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m, std::vector<std::size_t>& cols,
                       std::size_t row) {
  if (cols.empty()) return 1;
  mpz_class det = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (m[row][c] == 0) continue;
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    mpz_class minor = cofactor_det(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    if (k % 2 == 0) {
      det += m[row][c] * minor;
    } else {
      det -= m[row][c] * minor;
    }
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Signature singular_numbers_via_minors(const PadicMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (n > m) throw DimensionMismatch("singular numbers need rows <= cols");
  if (n > 5) throw std::invalid_argument("minors oracle limited to 5 rows");
  if (n == 0) return Signature{};

  const Prime p = a.prime();
  const mpz_class& modulus = a.modulus();

  IntVector partial(n + 1, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    std::optional<std::int64_t> best;
    for_each_subset(n, k, [&](const std::vector<std::size_t>& rsel) {
      for_each_subset(m, k, [&](const std::vector<std::size_t>& csel) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = a.residue(rsel[i], csel[j]);
        }
        std::vector<std::size_t> cols(k);
        for (std::size_t j = 0; j < k; ++j) cols[j] = j;
        mpz_class det = cofactor_det(sub, cols, 0);
        mpz_class reduced;
        mpz_fdiv_r(reduced.get_mpz_t(), det.get_mpz_t(), modulus.get_mpz_t());
        if (reduced == 0) return;  // valuation only known to be >= N
        const std::int64_t v = valuation(det, p);
        if (!best || v < *best) best = v;
      });
    });
    if (!best) throw PrecisionExhausted("every k x k minor vanishes to precision");
    partial[k] = *best;
  }

  IntVector parts(n);
  for (std::size_t k = 1; k <= n; ++k) parts[n - k] = partial[k] - partial[k - 1] + a.shift();
  return Signature(std::move(parts));
}

Signature scaled_singular_numbers(const IntVector& kappa, const PadicMatrix& a) {
  if (kappa.size() != a.rows()) throw DimensionMismatch("scaled SN: len(kappa) != rows");
  if (kappa.empty()) return Signature{};
  const std::int64_t base = *std::min_element(kappa.begin(), kappa.end());
  IntVector exps(kappa.size());
  std::int64_t spread = 0;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    exps[i] = kappa[i] - base;
    spread = std::max(spread, exps[i]);
  }
  const PadicMatrix scaled = scale_rows(a, exps, a.precision() + static_cast<int>(spread));
  return smith_singular_numbers(scaled).shifted(base);
}

}  // namespace padic
