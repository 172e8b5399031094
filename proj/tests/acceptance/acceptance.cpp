// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/errors.hpp"
#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/harness.hpp"
#include "padic_rmt/presets.hpp"
#include "padic_rmt/processes.hpp"
#include "padic_rmt/selftest.hpp"
#include "padic_rmt/smith.hpp"
#include "padic_rmt/stats.hpp"
#include "padic_rmt/symplectic.hpp"

using namespace padic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    out.pass = false;
    out.detail += "; over the time budget";
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %s: %s [%.1fs of %.0fs]\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(), secs,
              budget_seconds);
  std::fflush(stdout);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

std::int64_t alt_sum(std::int64_t top) {
  std::int64_t s = 0;
  for (std::int64_t e = top; e >= 0; e -= 2) s += std::int64_t{1} << e;
  return s;
}

std::string failing_criteria(const ExperimentReport& r) {
  std::string s;
  for (const auto& c : r.criteria) {
    if (!c.pass) s += (s.empty() ? "" : ", ") + c.name + " (" + c.detail + ")";
  }
  return s.empty() ? "all sub-criteria hold" : "failed: " + s;
}

std::string criterion_detail(const ExperimentReport& r, const std::string& name) {
  for (const auto& c : r.criteria) {
    if (c.name == name) return c.detail;
  }
  return "missing";
}

}  // namespace

int main() {
  constexpr std::int64_t kSamples = 100000;

  criterion(1, "SNF elimination equals the minors oracle", 30, [] {
    const CheckResult r = check_snf_oracle(1000, 4, 2024);
    return Outcome{r.pass, r.detail};
  });

  criterion(2, "non-split counterexample closed forms for k <= 20", 1, [] {
    EnsembleSpec spec;
    spec.kind = DoublingDiagonal{};
    const Trajectory traj = run_coupled_trajectory(spec, 20, RngStream(1, 0));
    for (std::int64_t k = 1; k <= 20; ++k) {
      const auto& s = traj.steps[static_cast<std::size_t>(k)];
      const bool ok = s.lambda[0] == alt_sum(k - 1) && s.lambda[1] == (k >= 2 ? alt_sum(k - 2) : 0) && s.v[0] == 0 &&
                      s.v[1] == (std::int64_t{1} << k) - 1;
      if (!ok) return Outcome{false, "mismatch at k = " + std::to_string(k)};
    }
    const auto& last = traj.steps.back();
    return Outcome{true, "k = 20: lambda = (" + std::to_string(last.lambda[0]) + "," + std::to_string(last.lambda[1]) +
                             "), v = (0," + std::to_string(last.v[1]) + ")"};
  });

  criterion(3, "corner law of SN (1,0) at p = 2", 60, [&] {
    const Prime p(2);
    const SignatureDistribution exact = corner_distribution(Signature{1, 0}, t_of(p));
    const SignatureDistribution want = {{Signature{1}, mpq_class(1, 3)}, {Signature{0}, mpq_class(2, 3)}};
    const Histogram h = sample_histogram(kSamples, 31, 0, [&](RngStream& rng) {
      return smith_singular_numbers(corner(sample_bi_invariant(Signature{1, 0}, 2, 2, p, 20, rng), 2));
    });
    const double tv = tv_distance(h, exact).get_d();
    return Outcome{exact == want && tv <= 0.02,
                   std::string(exact == want ? "exact law {(1):1/3, (0):2/3}" : "exact law differs") + ", TV = " +
                       fmt(tv) + " <= 0.02 over 1e5 samples"};
  });

  criterion(4, "Hall-Littlewood identities, n <= 4, parts in [-2,3]", 120, [] {
    const CheckResult a = check_hl_branching(4, -2, 3);
    const CheckResult b = check_hl_symmetrized(4, -2, 3);
    const CheckResult c = check_hl_principal(4, -2, 3);
    return Outcome{a.pass && b.pass && c.pass, a.detail + "; " + b.detail + "; " + c.detail};
  });

  criterion(5, "LLN for SN (1,0), p = 2, k = 5000, 50 trials", 600, [] {
    ExperimentConfig c = *find_preset("fixed-10");
    c.k_max = 5000;
    c.trials = 50;
    c.tol.lln_abs = 0.02;
    const ExperimentReport r = run_lln_experiment(c);
    return Outcome{r.all_pass(), criterion_detail(r, "lln") + " (target 2/3, 1/3)"};
  });

  criterion(6, "CLT for SN (1,0), p = 2, k = 2000, 1e4 trials", 1800, [] {
    ExperimentConfig c = *find_preset("fixed-10");
    c.k_max = 2000;
    c.trials = 10000;
    c.tol.clt_rel = 0.15;
    const ExperimentReport r = run_clt_experiment(c);
    return Outcome{r.all_pass(), criterion_detail(r, "clt_covariance") + "; " + failing_criteria(r)};
  });

  criterion(7, "bounded difference: fixed and mixture stabilize, counterexample grows", 600, [] {
    std::string detail;
    bool pass = true;
    for (const char* name : {"fixed-10", "mixture-10"}) {
      ExperimentConfig c = *find_preset(name);
      c.k_max = 2000;
      c.trials = 100;
      c.tol.stabilization = 0.95;
      const ExperimentReport r = run_bounded_difference_experiment(c);
      pass = pass && r.all_pass();
      detail += std::string(name) + ": " + criterion_detail(r, "stabilization") + "; ";
    }
    const ExperimentReport ce = run_bounded_difference_experiment(*find_preset("paper-counterexample"));
    pass = pass && ce.all_pass();
    detail += "counterexample: " + criterion_detail(ce, "unbounded_growth");
    return Outcome{pass, detail};
  });

  criterion(8, "strict corner inequality for fixed SN laws", 10, [] {
    int checked = 0;
    for (std::int64_t pv : {2, 3}) {
      for (const Signature& mu : {Signature{1, 0}, Signature{2, 1, 0}, Signature{1, 1, 0}}) {
        const SNLaw law = {{mu, mpq_class(1)}};
        const CornerInequalityReport r = verify_corner_inequality(law, t_of(Prime(pv)));
        if (!r.strict) return Outcome{false, "not strict for " + mu.to_string() + " at p = " + std::to_string(pv)};
        ++checked;
      }
    }
    return Outcome{true, std::to_string(checked) + " laws, every gap strictly ordered in exact rationals"};
  });

  criterion(9, "corner of Haar GL_3(Z_2), 2 x 2: law and independent increments", 300, [&] {
    const Prime p(2);
    const TruncatedDistribution law = hl_haar_corner_measure(2, 2, 3, p);
    const auto draws = map_trials<std::pair<Signature, IntVector>>(kSamples, 0, [&](std::int64_t i) {
      RngStream rng(41, static_cast<std::uint64_t>(i));
      const PadicMatrix a = sample_corner_of_haar(2, 2, 3, p, 40, rng);
      return std::make_pair(smith_singular_numbers(a), corner_weights(a));
    });
    Histogram h;
    std::vector<std::int64_t> d1, d2;
    for (const auto& [sn, w] : draws) {
      ++h[sn];
      d1.push_back(w[0] - w[1]);
      d2.push_back(w[1]);
    }
    const double tv = tv_distance(h, law.probs).get_d();
    const double r = correlation(d1, d2);
    const double band = 3.0 / std::sqrt(static_cast<double>(kSamples));
    return Outcome{tv <= 0.02 && std::abs(r) <= band, "TV = " + fmt(tv) + " <= 0.02, corr(increment_1, increment_2) = " +
                                                          fmt(r) + " within 3 sigma = " + fmt(band)};
  });

  criterion(10, "GSp: SL_2(F_3) uniformity, balanced pairs, GSp_4 symmetry", 900, [&] {
    std::map<std::vector<unsigned long>, std::uint64_t> counts;
    const auto keys = map_trials<std::vector<unsigned long>>(kSamples, 0, [](std::int64_t i) {
      RngStream rng(51, static_cast<std::uint64_t>(i));
      const PadicMatrix s = sample_haar_sp(1, Prime(3), 1, rng);
      std::vector<unsigned long> key;
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) key.push_back(s.residue(r, c).get_ui());
      }
      return key;
    });
    for (const auto& k : keys) ++counts[k];
    std::vector<std::uint64_t> obs;
    for (const auto& [k, c] : counts) obs.push_back(c);
    const double pval =
        counts.size() == 24 ? chi_square_gof(obs, std::vector<mpq_class>(24, mpq_class(1, 24))).p_value : 0.0;
    const bool uniform = pval > 0.01;

    ExperimentConfig other = *find_preset("gsp4-demo");
    other.spec.kind = GSpFixedSN{Signature{3, 2, 1, 0}};
    other.k_max = 500;
    other.trials = 10;
    bool balanced = true;
    for (const auto& t : run_trials(other)) balanced = balanced && t.balanced;

    ExperimentConfig demo = *find_preset("gsp4-demo");
    demo.k_max = 5000;
    demo.tol.gsp_symmetry = 0.01;
    const ExperimentReport r = run_lln_experiment(demo);
    bool demo_ok = true;
    for (const auto& c : r.criteria) {
      if (c.name == "gsp_symmetry" || c.name == "balanced_pairs") demo_ok = demo_ok && c.pass;
    }
    return Outcome{uniform && balanced && demo_ok,
                   "SL_2(F_3) chi-square p = " + fmt(pval) + " > 0.01 over 1e5 draws; balanced: " +
                       (balanced ? "yes" : "no") + "; " + criterion_detail(r, "gsp_symmetry")};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAILED", failures);
  return failures == 0 ? 0 : 1;
}
