#include "padic_rmt/symplectic.hpp"

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/errors.hpp"
#include "padic_rmt/smith.hpp"
#include "residue_ops.hpp"

namespace padic {

namespace {

using Vec = std::vector<mpz_class>;

// Vectors over Z/p^N with the pairing <x, y> = x^T Omega y.
struct SymplecticSpace {
  std::size_t half;
  Prime p;
  int precision;
  mpz_class modulus;

  std::size_t dim() const { return 2 * half; }

  void reduce(mpz_class& x) const { detail::reduce_in_place(x, p, precision, modulus); }

  mpz_class pair(const Vec& x, const Vec& y) const {
    mpz_class s = 0;
    const std::size_t d = dim();
    for (std::size_t i = 0; i < half; ++i) mpz_addmul(s.get_mpz_t(), x[i].get_mpz_t(), y[d - 1 - i].get_mpz_t());
    for (std::size_t i = half; i < d; ++i) mpz_submul(s.get_mpz_t(), x[i].get_mpz_t(), y[d - 1 - i].get_mpz_t());
    reduce(s);
    return s;
  }

  // x <- x + c y
  void axpy(Vec& x, const mpz_class& c, const Vec& y) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      mpz_addmul(x[i].get_mpz_t(), c.get_mpz_t(), y[i].get_mpz_t());
      reduce(x[i]);
    }
  }

  // Projection onto the Omega-complement of the pairs (e_b, f_b) built so far.
  Vec project(Vec x, const std::vector<Vec>& es, const std::vector<Vec>& fs) const {
    for (std::size_t b = 0; b < es.size(); ++b) {
      const mpz_class xf = pair(x, fs[b]);
      const mpz_class xe = pair(x, es[b]);
      axpy(x, -xf, es[b]);
      axpy(x, xe, fs[b]);
    }
    return x;
  }

  Vec uniform(RngStream& rng) const {
    Vec x(dim());
    for (auto& c : x) c = sample_uniform_residue(rng, p, precision);
    return x;
  }

  bool zero_mod_p(const Vec& x) const {
    for (const auto& c : x) {
      if (mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p.value())) != 0) return false;
    }
    return true;
  }
};

mpz_class sample_unit(Prime p, int precision, RngStream& rng) {
  while (true) {
    mpz_class u = sample_uniform_residue(rng, p, precision);
    if (mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p.value())) != 0) return u;
  }
}

}  // namespace

PadicMatrix symplectic_form(std::size_t half, Prime p, int precision) {
  const std::size_t d = 2 * half;
  PadicMatrix omega(p, d, d, precision);
  for (std::size_t i = 0; i < d; ++i) omega.set(i, d - 1 - i, i < half ? 1 : -1);
  return omega;
}

bool is_balanced(const Signature& lambda) {
  const std::size_t d = lambda.size();
  if (d % 2 != 0) return false;
  for (std::size_t i = 1; i < d / 2; ++i) {
    if (lambda[i] + lambda[d - 1 - i] != lambda[0] + lambda[d - 1]) return false;
  }
  return true;
}

std::optional<Similitude> is_gsp(const PadicMatrix& a) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) throw DimensionMismatch("GSp test needs a 2h x 2h matrix");
  const std::size_t d = a.rows();
  const PadicMatrix omega = symplectic_form(d / 2, a.prime(), a.precision());
  const PadicMatrix m = matmul(matmul(a, omega), transpose(a));
  const mpz_class& mu = m.residue(0, d - 1);
  if (mu == 0) {
    if (m.is_exact_zero(0, d - 1)) return std::nullopt;
    throw PrecisionExhausted("similitude vanishes to precision");
  }
  mpz_class neg_mu = m.modulus() - mu;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const mpz_class& x = m.residue(i, j);
      if (j == d - 1 - i) {
        if (x != (i < d / 2 ? mu : neg_mu)) return std::nullopt;
      } else if (x != 0) {
        return std::nullopt;
      }
    }
  }
  const std::int64_t v = valuation(mu, a.prime());
  Similitude out;
  out.shift = m.shift() + v;
  out.precision = a.precision() - static_cast<int>(v);
  out.residue = mu / prime_power(a.prime(), v);
  return out;
}

Signature gsp_singular_numbers(const PadicMatrix& a) {
  Signature sn = smith_singular_numbers(a);
  if (!is_balanced(sn)) throw ConstraintViolated("GSp singular numbers not balanced: " + sn.to_string());
  return sn;
}

PadicMatrix sample_haar_sp(std::size_t half, Prime p, int precision, RngStream& rng) {
  const SymplecticSpace space{half, p, precision, prime_power(p, precision)};
  const std::size_t d = space.dim();
  std::vector<Vec> es, fs;
  for (std::size_t a = 0; a < half; ++a) {
    Vec v;
    do {
      v = space.project(space.uniform(rng), es, fs);
    } while (space.zero_mod_p(v));

    // <v, x> = sum_i c_i x_i with c_i = v_{d-1-i} Omega[d-1-i][i].
    std::size_t c = 0;
    mpz_class coeff;
    for (; c < d; ++c) {
      coeff = c < half ? -v[d - 1 - c] : v[d - 1 - c];
      space.reduce(coeff);
      if (mpz_fdiv_ui(coeff.get_mpz_t(), static_cast<unsigned long>(p.value())) != 0) break;
    }
    Vec u0(d, 0);
    mpz_invert(u0[c].get_mpz_t(), coeff.get_mpz_t(), space.modulus.get_mpz_t());
    const Vec u = space.project(u0, es, fs);

    Vec w = space.project(space.uniform(rng), es, fs);
    mpz_class gap = 1 - space.pair(v, w);
    space.reduce(gap);
    space.axpy(w, gap, u);

    es.push_back(std::move(v));
    fs.push_back(std::move(w));
  }
  PadicMatrix s(p, d, d, precision);
  for (std::size_t a = 0; a < half; ++a) {
    for (std::size_t j = 0; j < d; ++j) {
      s.set_residue(a, j, es[a][j]);
      s.set_residue(d - 1 - a, j, fs[a][j]);
    }
  }
  return s;
}

GSpElement sample_haar_gsp(std::size_t half, Prime p, int precision, RngStream& rng) {
  PadicMatrix s = sample_haar_sp(half, p, precision, rng);
  const mpz_class u = sample_unit(p, precision, rng);
  const std::size_t d = 2 * half;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = half; j < d; ++j) s.set_residue(i, j, s.residue(i, j) * u);
  }
  return GSpElement{std::move(s), Similitude{0, u, precision}};
}

GSpElement sample_bi_invariant_gsp(const Signature& lambda, Prime p, int precision, RngStream& rng) {
  if (!is_balanced(lambda)) throw std::invalid_argument("GSp signature must be balanced");
  const std::size_t d = lambda.size();
  GSpElement u = sample_haar_gsp(d / 2, p, precision, rng);
  GSpElement v = sample_haar_gsp(d / 2, p, precision, rng);
  const PadicMatrix diag = diag_signature(lambda, d, d, p, precision);
  PadicMatrix a = matmul(matmul(u.matrix, diag), v.matrix);
  mpz_class mu = u.similitude.residue * v.similitude.residue;
  detail::reduce_in_place(mu, p, precision, a.modulus());
  return GSpElement{std::move(a), Similitude{lambda.front() + lambda.back(), mu, precision}};
}

IntVector gsp_corner_weights(const PadicMatrix& a) {
  IntVector w(a.rows());
  for (std::size_t i = 1; i <= a.rows(); ++i) w[i - 1] = smith_singular_numbers(corner(a, i)).weight();
  return w;
}

}  // namespace padic
