#include <doctest.h>

#include <cmath>
#include <sstream>

#include "padic_rmt/harness.hpp"
#include "padic_rmt/io.hpp"
#include "padic_rmt/presets.hpp"
#include "padic_rmt/stats.hpp"

using namespace padic;

TEST_SUITE("stats_harness") {
  TEST_CASE("total variation is exact") {
    const Histogram h = {{Signature{1}, 30}, {Signature{0}, 60}, {Signature{2}, 10}};
    const SignatureDistribution d = {{Signature{1}, mpq_class(1, 3)}, {Signature{0}, mpq_class(2, 3)}};
    // |3/10 - 1/3| + |6/10 - 2/3| + 1/10 = 1/30 + 2/30 + 3/30.
    CHECK(tv_distance(h, d) == mpq_class(1, 10));
  }

  TEST_CASE("chi-square against known values") {
    const auto even = chi_square_gof(std::vector<std::uint64_t>{50, 50}, {mpq_class(1, 2), mpq_class(1, 2)});
    CHECK(even.statistic == doctest::Approx(0.0));
    CHECK(even.p_value == doctest::Approx(1.0));
    const auto skew = chi_square_gof(std::vector<std::uint64_t>{60, 40}, {mpq_class(1, 2), mpq_class(1, 2)});
    CHECK(skew.statistic == doctest::Approx(4.0));
    CHECK(skew.dof == 1);
    CHECK(skew.p_value == doctest::Approx(0.0455003).epsilon(1e-5));
  }

  TEST_CASE("chi-square pools small cells") {
    const auto r = chi_square_gof(std::vector<std::uint64_t>{88, 8, 3, 1},
                                  {mpq_class(90, 100), mpq_class(6, 100), mpq_class(3, 100), mpq_class(1, 100)});
    // Expected 1 + 3 + 6 = 10 is the first pooled cell to reach 5.
    CHECK(r.cells == 2);
    CHECK(r.dof == 1);
  }

  TEST_CASE("normal tail") {
    CHECK(normal_two_sided_p(1.959964) == doctest::Approx(0.05).epsilon(1e-5));
  }

  TEST_CASE("exact moments") {
    MomentSums m;
    for (int x : {1, 2, 3, 4}) m.add(x);
    CHECK(m.mean() == mpq_class(5, 2));
    CHECK(m.central(2) == mpq_class(5, 4));
    CHECK(m.central(3) == 0);
    CHECK(m.skewness() == doctest::Approx(0.0));
    CHECK(m.excess_kurtosis() == doctest::Approx(-1.36));
    MomentSums a, b;
    a.add(1);
    a.add(2);
    b.add(3);
    b.add(4);
    a.merge(b);
    CHECK(a.central(4) == m.central(4));
    CHECK(correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  }

  TEST_CASE("serial and parallel trial maps agree") {
    ExperimentConfig c = *find_preset("fixed-10");
    c.k_max = 200;
    c.trials = 12;
    c.jobs = 1;
    const auto serial = run_trials(c);
    c.jobs = 4;
    const auto parallel = run_trials(c);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].lambda == parallel[i].lambda);
      CHECK(serial[i].v == parallel[i].v);
      CHECK(serial[i].m_full == parallel[i].m_full);
    }
  }

  TEST_CASE("trial errors propagate out of the parallel map") {
    CHECK_THROWS_AS(map_trials<int>(8, 4,
                                    [](std::int64_t i) -> int {
                                      if (i == 5) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                    std::runtime_error);
  }

  TEST_CASE("LLN report on a short run") {
    ExperimentConfig c = *find_preset("fixed-10");
    c.k_max = 1500;
    c.trials = 8;
    const auto r = run_lln_experiment(c);
    CHECK(r.all_pass());
    const auto j = r.to_json();
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["predictions"]["lyapunov"][0] == "2/3");
    CHECK(j["predictions"]["source"] == "hall_littlewood");
  }

  TEST_CASE("constant SN gives a degenerate covariance note") {
    ExperimentConfig c = *find_preset("constant-sn");
    c.k_max = 50;
    c.trials = 20;
    const auto r = run_clt_experiment(c);
    CHECK(r.all_pass());
    bool noted = false;
    for (const auto& n : r.notes) noted = noted || n.rfind("DegenerateCovariance", 0) == 0;
    CHECK(noted);
  }

  TEST_CASE("counterexample preset shows unbounded growth") {
    ExperimentConfig c = *find_preset("paper-counterexample");
    const auto r = run_bounded_difference_experiment(c);
    REQUIRE(r.criteria.size() == 1);
    CHECK(r.criteria[0].name == "unbounded_growth");
    CHECK(r.criteria[0].pass);
    CHECK(r.empirical["split_consistent_fraction"] == 0.0);
  }

  TEST_CASE("experiments reject ensembles without a prediction") {
    ExperimentConfig c = *find_preset("paper-counterexample");
    CHECK_THROWS_AS(run_lln_experiment(c), std::invalid_argument);
    CHECK_THROWS_AS(run_clt_experiment(*find_preset("haar-corner")), std::invalid_argument);
  }

  TEST_CASE("presets resolve, including the alias") {
    for (const auto& p : presets()) CHECK_NOTHROW(p.config.spec.validate());
    CHECK(find_preset("non-split-counterexample").has_value());
    CHECK(!find_preset("nope").has_value());
  }
}

TEST_SUITE("io") {
  TEST_CASE("rationals") {
    CHECK(rational_string(mpq_class(2, 4)) == "1/2");
    CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("x"), ConfigError);
  }

  TEST_CASE("matrix JSON round trip keeps exact and truncated zeros apart") {
    PadicMatrix a(Prime(3), 2, 2, 5, -1);
    a.set(0, 0, mpz_class(7));
    a.set_residue(1, 1, mpz_class(243));
    a.set(1, 0, mpz_class(2));
    const auto j = matrix_to_json(a);
    CHECK(j["entries"][0][1] == "0");
    const PadicMatrix b = matrix_from_json(j);
    CHECK(b.shift() == -1);
    CHECK(b.is_exact_zero(0, 1));
    CHECK(!b.is_exact_zero(1, 1));
    CHECK(b.congruent(a));
  }

  TEST_CASE("matrix JSON with rational entries") {
    const auto j = nlohmann::json::parse(R"({"p":2,"precision":16,"entries":[["1/2","3"],["0","1"]]})");
    const PadicMatrix a = matrix_from_json(j);
    CHECK(a.shift() == -1);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"p":4,"precision":8,"entries":[["1"]]})")), ConfigError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"p":2,"precision":8,"entries":[["1"],["1","2"]]})")),
                    ConfigError);
  }

  TEST_CASE("spec and config round trips") {
    for (const auto& p : presets()) {
      const auto j = config_to_json(p.config);
      const ExperimentConfig back = config_from_json(j);
      CHECK(config_to_json(back) == j);
    }
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"spec":{"kind":{"type":"Nope"}}})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"spec":{"n":2,"kind":{"type":"FixedSN","lambda":[0,1]}}})")),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"([1,2])")), ConfigError);
  }

  TEST_CASE("distribution JSON") {
    const SignatureDistribution d = {{Signature{1}, mpq_class(1, 3)}, {Signature{0}, mpq_class(2, 3)}};
    const auto j = distribution_to_json(d);
    CHECK(j[0]["prob"] == "2/3");
    CHECK(distribution_from_json(j) == d);
  }

  TEST_CASE("trajectory CSV layout") {
    EnsembleSpec spec;
    spec.kind = FixedSN{Signature{1, 0}};
    const Trajectory t = run_coupled_trajectory(spec, 3, RngStream(1, 0), true);
    std::ostringstream os;
    write_trajectory_csv(t, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# padic-rmt trajectory csv v1");
    std::getline(in, line);
    CHECK(line.rfind("k,lambda_1,lambda_2,v_1,v_2,w_1,w_2,margin_1,sn_last,lyapunov_1,lyapunov_2,interp_1_1", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
  }
}
