#include <doctest.h>

#include <cmath>

#include "padic_rmt/errors.hpp"
#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/selftest.hpp"
#include "padic_rmt/unipoly.hpp"

using namespace padic;

namespace {

const mpq_class half(1, 2);

SNLaw point_mass(const Signature& s) { return {{s, mpq_class(1)}}; }

}  // namespace

TEST_SUITE("hall_littlewood") {
  TEST_CASE("UniPoly arithmetic") {
    const UniPoly x = UniPoly::monomial(mpq_class(1), 1);
    const UniPoly one = UniPoly::monomial(mpq_class(1), 0);
    const UniPoly sq = (x + one) * (x - one);
    CHECK(sq.coefficient(2) == 1);
    CHECK(sq.coefficient(1) == 0);
    CHECK(sq.coefficient(0) == -1);
    CHECK(sq.eval(mpq_class(3)) == 8);
    CHECK(sq.derivative().eval(mpq_class(5)) == 10);
    const UniPoly inv = UniPoly::monomial(mpq_class(2), -1);
    CHECK(inv.eval(mpq_class(1, 2)) == 4);
    CHECK(rational_pow(mpq_class(2, 3), -2) == mpq_class(9, 4));
  }

  TEST_CASE("t = 0 gives Schur polynomials and t = 1 monomial symmetric functions") {
    const std::vector<mpq_class> ones(3, mpq_class(1));
    // s_{(2,1,0)}(1,1,1) = dim of the GL_3 irrep = 8; m_{(2,1,0)}(1,1,1) = 6.
    CHECK(hl_p_eval(Signature{2, 1, 0}, ones, mpq_class(0)) == 8);
    CHECK(hl_p_eval(Signature{2, 1, 0}, ones, mpq_class(1)) == 6);
    CHECK(hl_p_eval(Signature{1, 1, 0}, ones, mpq_class(0)) == 3);
    CHECK(hl_p_eval(Signature{0, 0, 0}, ones, half) == 1);
  }

  TEST_CASE("psi coefficients") {
    CHECK(psi(Signature{2, 0}, Signature{1}, half) == half);
    CHECK(psi(Signature{1, 0}, Signature{1}, half) == 1);
    CHECK(psi(Signature{1, 0}, Signature{0}, half) == 1);
    CHECK(psi(Signature{2, 2, 0}, Signature{2, 1}, half) == half);
    CHECK(psi(Signature{2, 1, 1}, Signature{1, 1}, half) == 1);
  }

  TEST_CASE("chains interlace and carry their weights") {
    const auto chains = enumerate_chains(Signature{2, 1, 0}, Signature{1}, 2);
    CHECK(!chains.empty());
    for (const auto& c : chains) {
      REQUIRE(c.levels.size() == 3);
      CHECK(c.levels.front() == Signature{1});
      CHECK(c.levels.back() == Signature{2, 1, 0});
      for (std::size_t i = 0; i + 1 < c.levels.size(); ++i) {
        CHECK(interlaces(c.levels[i], c.levels[i + 1]));
        CHECK(c.weights[i] == c.levels[i + 1].weight() - c.levels[i].weight());
      }
    }
  }

  TEST_CASE("identity suites on a small box") {
    for (const auto& r : {check_hl_branching(3, -2, 2), check_hl_symmetrized(3, -2, 2), check_hl_principal(3, -2, 2)}) {
      INFO(r.name << ": " << r.detail);
      CHECK(r.pass);
    }
  }

  TEST_CASE("symmetrized oracle rejects repeated points") {
    CHECK_THROWS_AS(hl_p_symmetrized_oracle(Signature{1, 0}, {half, half}, half), RepeatedPoints);
  }

  TEST_CASE("corner laws: verified values") {
    CHECK(corner_distribution(Signature{1, 0}, half) ==
          SignatureDistribution{{Signature{1}, mpq_class(1, 3)}, {Signature{0}, mpq_class(2, 3)}});
    // (1,0): {(1): 1/(p+1), (0): p/(p+1)}.
    const mpq_class t3(1, 3);
    CHECK(corner_distribution(Signature{1, 0}, t3) ==
          SignatureDistribution{{Signature{1}, mpq_class(1, 4)}, {Signature{0}, mpq_class(3, 4)}});
    // (1,0,0): {(1,0): t(1+t)/(1+t+t^2), (0,0): 1/(1+t+t^2)}.
    for (const mpq_class& t : {half, t3}) {
      const auto d = corner_distribution(Signature{1, 0, 0}, t);
      CHECK(d.at(Signature{1, 0}) == t * (1 + t) / (1 + t + t * t));
      CHECK(d.at(Signature{0, 0}) == 1 / (1 + t + t * t));
    }
    CHECK(corner_distribution(Signature{3, 3}, t3) == SignatureDistribution{{Signature{3}, mpq_class(1)}});
  }

  TEST_CASE("joint corner law marginals match the k-th corner laws") {
    const Signature mu{2, 1, 0};
    const auto joint = joint_corner_distribution(mu, half);
    for (std::size_t k = 2; k <= 3; ++k) {
      SignatureDistribution marginal;
      for (const auto& [levels, p] : joint) marginal[levels[k - 2]] += p;
      CHECK(marginal == kth_corner_distribution(mu, k, half));
    }
  }

  TEST_CASE("property: corner laws are probability vectors supported on interlacing signatures") {
    for (std::size_t n = 2; n <= 4; ++n) {
      for (const auto& lambda : signatures_in_box(n, -1, 2)) {
        mpq_class total = 0;
        for (const auto& [mu, p] : corner_distribution(lambda, mpq_class(1, 3))) {
          CHECK(p >= 0);
          CHECK(interlaces(mu, lambda));
          total += p;
        }
        CHECK(total == 1);
      }
    }
  }

  TEST_CASE("property: shift covariance") {
    const mpq_class t(1, 3);
    for (const auto& lambda : signatures_in_box(3, 0, 2)) {
      for (std::int64_t c : {-2, 3}) {
        const auto base = corner_distribution(lambda, t);
        const auto moved = corner_distribution(lambda.shifted(c), t);
        REQUIRE(base.size() == moved.size());
        for (const auto& [mu, p] : base) CHECK(moved.at(mu.shifted(c)) == p);
        for (std::size_t j = 1; j <= 3; ++j) {
          CHECK(expected_corner_weight(point_mass(lambda.shifted(c)), j, t) ==
                expected_corner_weight(point_mass(lambda), j, t) + static_cast<long>((3 - j + 1) * c));
        }
      }
    }
  }

  TEST_CASE("expected corner weights: generating function against direct summation") {
    const SNLaw mix = {{Signature{2, 1, 0}, mpq_class(1, 4)}, {Signature{1, 1, -1}, mpq_class(3, 4)}};
    for (std::size_t j = 1; j <= 3; ++j) {
      CHECK(expected_corner_weight(mix, j, half) == expected_corner_weight_direct(mix, j, half));
    }
    const UniPoly g = corner_weight_pgf(Signature{1, 0}, 2, half);
    CHECK(g.eval(mpq_class(1)) == 1);
    CHECK(g.coefficient(1) == mpq_class(1, 3));
  }

  TEST_CASE("LLN predictions") {
    CHECK(lln_prediction(point_mass(Signature{1, 0}), half) == std::vector<mpq_class>{mpq_class(2, 3), mpq_class(1, 3)});
    const SNLaw mix = {{Signature{1, 0}, half}, {Signature{0, 0}, half}};
    const auto m = lln_prediction(mix, half);
    CHECK(m[0] == mpq_class(1, 3));
    CHECK(m[1] == mpq_class(1, 6));
  }

  TEST_CASE("covariance of (1,0) at p = 2") {
    // w_1 = 1 always, w_2 is Bernoulli(1/3): Var w_2 = 2/9.
    const auto cov = corner_weight_covariance(point_mass(Signature{1, 0}), half);
    const mpq_class v(2, 9);
    CHECK(cov.sigma == Matrix{{0, 0}, {0, v}});
    CHECK(cov.l_sigma_lt == Matrix{{v, -v}, {-v, v}});
    CHECK(positive_semidefinite(cov.l_sigma_lt));
    CHECK(!positive_semidefinite(Matrix{{1, 2}, {2, 1}}));
  }

  TEST_CASE("property: covariances are positive semidefinite") {
    for (const auto& lambda : signatures_in_box(3, 0, 2)) {
      const auto cov = corner_weight_covariance(point_mass(lambda), mpq_class(1, 3));
      CHECK(positive_semidefinite(cov.sigma));
      CHECK(positive_semidefinite(cov.l_sigma_lt));
    }
  }

  TEST_CASE("strict corner inequality") {
    for (const auto& lambda : {Signature{1, 0}, Signature{2, 1, 0}, Signature{1, 1, 0}}) {
      for (std::int64_t p : {2, 3}) {
        const auto r = verify_corner_inequality(point_mass(lambda), t_of(Prime(p)));
        CHECK(!r.degenerate);
        CHECK(r.strict);
      }
    }
    const auto g = verify_corner_inequality(point_mass(Signature{2, 1, 0}), half).gaps;
    CHECK(g == std::vector<mpq_class>{mpq_class(3, 2), mpq_class(1), mpq_class(1, 2)});
    const auto flat = verify_corner_inequality(point_mass(Signature{2, 2}), half);
    CHECK(flat.degenerate);
  }

  TEST_CASE("Q normalization and the Cauchy kernel") {
    CHECK(hl_q_eval(Signature{0, 0}, {half, mpq_class(1, 3)}, half) == 1);
    CHECK(hl_q_eval(Signature{1, 1}, {half}, half) == 0);
    // Q_(1) at one point x is (1 - t) x.
    CHECK(hl_q_eval(Signature{1}, {mpq_class(3)}, half) == mpq_class(3, 2));
    CHECK(cauchy_kernel({half}, {}, half) == 1);
    CHECK(cauchy_kernel({half}, {half}, half) == mpq_class(7, 6));
    CHECK_THROWS_AS(cauchy_kernel({mpq_class(2)}, {half}, half), KernelPole);
  }

  TEST_CASE("Cauchy identity: sum of P_lambda Q_lambda") {
    // sum_lambda P_lambda(a) Q_lambda(b) = Pi_t(a; b) with one b point.
    const std::vector<mpq_class> a = {half, mpq_class(1, 4)};
    const std::vector<mpq_class> b = {mpq_class(1, 3)};
    mpq_class sum = 0;
    for (std::int64_t top = 0; top <= 40; ++top) sum += hl_p_eval(Signature{top, 0}, a, half) * hl_q_eval(Signature{top, 0}, b, half);
    const double diff = mpq_class(cauchy_kernel(a, b, half) - sum).get_d();
    CHECK(diff >= 0);
    CHECK(diff < 1e-12);
  }

  TEST_CASE("Haar corner measure n = m = 2, N = 3, p = 2") {
    const auto m = hl_haar_corner_measure(2, 2, 3, Prime(2));
    CHECK(m.probs.at(Signature{0, 0}) == mpq_class(4, 7));
    CHECK(m.probs.at(Signature{1, 0}) == mpq_class(3, 14));
    CHECK(m.omitted_mass >= 0);
    CHECK(m.omitted_mass < mpq_class(1, 1000000));
    mpq_class total = 0;
    for (const auto& [sig, p] : m.probs) total += p;
    CHECK(total + m.omitted_mass == 1);
    CHECK(haar_corner_increment_mean(2, 3, 1, half) == mpq_class(2, 3));
    CHECK(haar_corner_increment_mean(2, 3, 2, half) == mpq_class(4, 21));
  }

  TEST_CASE("the literal Q exponent start hits a kernel pole") {
    CHECK_THROWS_AS(hl_haar_corner_measure(2, 2, 3, Prime(2), 1e-6, QExponentStart::Literal), KernelPole);
  }

  TEST_CASE("increment means: finite N from the generating function, N = infinity limit") {
    const mpq_class t(1, 3);
    for (std::size_t j = 1; j <= 3; ++j) {
      // Numerical derivative check on the exact pgf.
      const mpq_class h(1, 1000000);
      const mpq_class slope = (haar_corner_increment_pgf(3, 6, j, t, 1 + h) - haar_corner_increment_pgf(3, 6, j, t, 1 - h)) / (2 * h);
      CHECK(std::abs(mpq_class(slope - haar_corner_increment_mean(3, 6, j, t)).get_d()) < 1e-9);
      const mpq_class tj = rational_pow(t, static_cast<std::int64_t>(j));
      CHECK(haar_corner_increment_mean(3, std::nullopt, j, t) == tj / (1 - tj));
      CHECK(haar_corner_increment_mean(3, 200, j, t) < tj / (1 - tj));
    }
  }

  TEST_CASE("Haar corner LLN agrees with the measure's mean weights") {
    const auto m = hl_haar_corner_measure(2, 2, 3, Prime(2), 1e-12);
    mpq_class mean_weight = 0;
    for (const auto& [sig, p] : m.probs) mean_weight += p * sig.weight();
    const auto pred = haar_corner_lln_prediction(2, 3, half);
    // E|SN(A)| = sum of all increments.
    CHECK(std::abs(mpq_class(mean_weight - pred[0] - pred[1]).get_d()) < 1e-9);
  }
}
