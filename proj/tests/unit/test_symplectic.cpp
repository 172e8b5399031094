#include <doctest.h>

#include <map>

#include "padic_rmt/errors.hpp"
#include "padic_rmt/processes.hpp"
#include "padic_rmt/smith.hpp"
#include "padic_rmt/stats.hpp"
#include "padic_rmt/symplectic.hpp"

using namespace padic;

TEST_SUITE("symplectic") {
  TEST_CASE("the form is antisymmetric with Omega^2 = -1") {
    for (std::size_t h = 1; h <= 3; ++h) {
      const PadicMatrix w = symplectic_form(h, Prime(3), 10);
      const PadicMatrix sq = matmul(w, w);
      const mpz_class minus_one = w.modulus() - 1;
      for (std::size_t i = 0; i < 2 * h; ++i) {
        for (std::size_t j = 0; j < 2 * h; ++j) {
          CHECK(sq.residue(i, j) == (i == j ? minus_one : mpz_class(0)));
          const mpz_class sum = (w.residue(i, j) + w.residue(j, i)) % w.modulus();
          CHECK(sum == 0);
        }
      }
    }
  }

  TEST_CASE("is_gsp recognizes similitudes and rejects other matrices") {
    PadicMatrix d(Prime(2), 2, 2, 10);
    d.set(0, 0, mpz_class(4));
    d.set(1, 1, mpz_class(1));
    // For h = 1 every invertible matrix is a similitude with mu = det.
    auto mu = is_gsp(d);
    REQUIRE(mu);
    CHECK(mu->shift == 2);
    PadicMatrix e(Prime(2), 4, 4, 10);
    e.set(0, 0, mpz_class(2));
    for (std::size_t i = 1; i < 4; ++i) e.set(i, i, mpz_class(1));
    CHECK(!is_gsp(e).has_value());
  }

  TEST_CASE("balanced signatures") {
    CHECK(is_balanced(Signature{3, 2, 1, 0}));
    CHECK(is_balanced(Signature{1, 1, 0, 0}));
    CHECK(!is_balanced(Signature{2, 2, 1, 0}));
    CHECK(is_balanced(Signature{5, -1}));
  }

  TEST_CASE("Haar Sp and GSp samples") {
    RngStream rng(1, 0);
    for (std::int64_t pv : {2, 3, 5}) {
      for (std::size_t h = 1; h <= 3; ++h) {
        const PadicMatrix s = sample_haar_sp(h, Prime(pv), 16, rng);
        auto mu = is_gsp(s);
        REQUIRE(mu);
        CHECK(mu->shift == 0);
        CHECK(mu->residue == 1);
        const GSpElement g = sample_haar_gsp(h, Prime(pv), 16, rng);
        auto mg = is_gsp(g.matrix);
        REQUIRE(mg);
        CHECK(mg->shift == 0);
        CHECK(mg->residue == g.similitude.residue);
      }
    }
  }

  TEST_CASE("SL_2(F_3) uniformity") {
    // Sp_2 = SL_2 has 24 elements over F_3.
    std::map<std::vector<unsigned long>, std::uint64_t> counts;
    RngStream rng(2, 0);
    const int draws = 12000;
    for (int i = 0; i < draws; ++i) {
      const PadicMatrix s = sample_haar_sp(1, Prime(3), 1, rng);
      std::vector<unsigned long> key;
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) key.push_back(s.residue(r, c).get_ui());
      }
      ++counts[key];
    }
    REQUIRE(counts.size() == 24);
    std::vector<std::uint64_t> obs;
    for (const auto& [k, c] : counts) obs.push_back(c);
    CHECK(chi_square_gof(obs, std::vector<mpq_class>(24, mpq_class(1, 24))).p_value > 0.001);
  }

  TEST_CASE("bi-invariant GSp samples") {
    RngStream rng(3, 0);
    for (const Signature& lambda : {Signature{1, 1, 0, 0}, Signature{3, 2, 1, 0}, Signature{2, 0}}) {
      for (int i = 0; i < 10; ++i) {
        const GSpElement g = sample_bi_invariant_gsp(lambda, Prime(2), 30, rng);
        CHECK(gsp_singular_numbers(g.matrix) == lambda);
        auto mu = is_gsp(g.matrix);
        REQUIRE(mu);
        CHECK(mu->shift == lambda.front() + lambda.back());
      }
    }
  }

  TEST_CASE("GSp corner weights interlace down to one row") {
    RngStream rng(4, 0);
    const GSpElement g = sample_bi_invariant_gsp(Signature{3, 2, 1, 0}, Prime(3), 30, rng);
    const IntVector w = gsp_corner_weights(g.matrix);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == 6);
    for (std::size_t i = 1; i < 4; ++i) CHECK(w[i] <= w[i - 1]);
  }

  TEST_CASE("property: GSp products stay balanced") {
    EnsembleSpec spec;
    spec.n = 4;
    spec.kind = GSpFixedSN{Signature{1, 1, 0, 0}};
    TrajectoryRunner runner(spec, RngStream(5, 0));
    for (int k = 0; k < 300; ++k) {
      const auto& s = runner.advance();
      CHECK(is_balanced(s.lambda));
      CHECK(s.lambda[0] + s.lambda[3] == s.k);
    }
  }
}
