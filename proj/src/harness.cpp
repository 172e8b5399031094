#include "padic_rmt/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "padic_rmt/hall_littlewood.hpp"
#include "padic_rmt/io.hpp"
#include "padic_rmt/symplectic.hpp"

namespace padic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json rational_array(const std::vector<mpq_class>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(rational_string(q));
  return out;
}

mpq_class mpq_of(std::int64_t x) { return mpq_class(mpz_class(static_cast<long>(x))); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

int available_threads(int jobs) {
#ifdef PADIC_RMT_HAVE_OPENMP
  return jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  return 1;
#endif
}

bool ExperimentReport::all_pass() const {
  for (const auto& c : criteria) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = experiment;
  j["config"] = config;
  j["predictions"] = predictions;
  j["empirical"] = empirical;
  j["criteria"] = nlohmann::json::array();
  for (const auto& c : criteria) {
    j["criteria"].push_back({{"name", c.name},
                             {"pass", c.pass},
                             {"tolerance", c.tolerance},
                             {"sample_size", c.sample_size},
                             {"detail", c.detail}});
  }
  j["notes"] = notes;
  j["all_pass"] = all_pass();
  j["runtime"] = {{"seconds", runtime_seconds}, {"threads", threads}};
  return j;
}

std::string ExperimentReport::summary() const {
  std::ostringstream os;
  os << experiment << ": " << (all_pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : criteria) {
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " (tol " << c.tolerance << ", n=" << c.sample_size
       << "): " << c.detail << "\n";
  }
  for (const auto& note : notes) os << "  note: " << note << "\n";
  return os.str();
}

TrialSummary run_trial(const ExperimentConfig& config, std::int64_t trial_index) {
  const std::size_t n = config.spec.n;
  const std::int64_t k_max = config.k_max;
  const bool symplectic = config.spec.is_symplectic();
  TrajectoryRunner runner(config.spec, RngStream(config.master_seed, static_cast<std::uint64_t>(trial_index)));
  TrialSummary s;
  s.weight_sums.assign(n, 0);
  std::vector<IntVector> margins(n > 0 ? n - 1 : 0);
  std::int64_t m = 0;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const TrajectoryStep& step = runner.advance();
    for (std::size_t i = 0; i < n; ++i) {
      m = std::max(m, std::abs(step.lambda[i] - step.v[i]));
      s.weight_sums[i] += step.w[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) margins[i].push_back(step.margin[i]);
    if (symplectic && !is_balanced(step.lambda)) s.balanced = false;
    if (k == k_max / 4) s.m_quarter = m;
    if (k == k_max / 2) s.m_half = m;
  }
  s.m_full = m;
  s.split_consistent = n > 1;
  for (const auto& series : margins) s.split_consistent = s.split_consistent && split_consistent_series(series);
  s.lambda = runner.current().lambda;
  s.v = runner.current().v;
  s.escalations = static_cast<std::int64_t>(runner.escalations().size());
  return s;
}

std::vector<TrialSummary> run_trials(const ExperimentConfig& config) {
  config.spec.validate();
  if (config.trials < 1 || config.k_max < 1) throw std::invalid_argument("trials and k_max must be >= 1");
  return map_trials<TrialSummary>(config.trials, config.jobs,
                                  [&](std::int64_t i) { return run_trial(config, i); });
}

Aggregate aggregate(const std::vector<TrialSummary>& trials) {
  Aggregate a;
  if (trials.empty()) return a;
  const std::size_t n = trials.front().lambda.size();
  a.lambda.assign(n, MomentSums{});
  a.cross.assign(n, std::vector<mpz_class>(n, 0));
  a.weight_sums.assign(n, 0);
  for (const auto& t : trials) {
    for (std::size_t i = 0; i < n; ++i) {
      a.lambda[i].add(t.lambda[i]);
      a.weight_sums[i] += mpz_class(static_cast<long>(t.weight_sums[i]));
      for (std::size_t j = 0; j < n; ++j) {
        a.cross[i][j] += mpz_class(static_cast<long>(t.lambda[i])) * mpz_class(static_cast<long>(t.lambda[j]));
      }
    }
  }
  a.trials = static_cast<std::int64_t>(trials.size());
  return a;
}

std::optional<std::vector<mpq_class>> exact_lln_prediction(const EnsembleSpec& spec) {
  const mpq_class t = t_of(spec.p);
  if (auto law = spec.finite_law()) return lln_prediction(*law, t);
  if (const auto* c = std::get_if<CornerOfHaar>(&spec.kind)) return haar_corner_lln_prediction(spec.n, c->ambient, t);
  if (std::holds_alternative<HaarEntries>(spec.kind)) return haar_corner_lln_prediction(spec.n, std::nullopt, t);
  return std::nullopt;
}

ExperimentReport run_lln_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  if (!config.spec.is_iid()) throw std::invalid_argument("LLN needs an i.i.d. ensemble");
  ExperimentReport report;
  report.experiment = "lln";
  report.config = config_to_json(config);
  report.threads = available_threads(config.jobs);
  const std::size_t n = config.spec.n;
  const auto trials = run_trials(config);
  const Aggregate agg = aggregate(trials);
  const double k = static_cast<double>(config.k_max);
  const double tcount = static_cast<double>(agg.trials);

  std::vector<double> est(n), se(n);
  for (std::size_t i = 0; i < n; ++i) {
    est[i] = agg.lambda[i].mean().get_d() / k;
    const double var = agg.lambda[i].central(2).get_d() / (k * k);
    se[i] = tcount > 1 ? std::sqrt(var * tcount / (tcount - 1) / tcount) : 0.0;
  }
  report.empirical["lyapunov"] = est;
  report.empirical["standard_error"] = se;
  report.empirical["k"] = config.k_max;
  report.empirical["trials"] = agg.trials;

  std::vector<double> pred(n);
  if (auto exact = exact_lln_prediction(config.spec)) {
    report.predictions["lyapunov"] = rational_array(*exact);
    report.predictions["source"] = config.spec.finite_law() ? "hall_littlewood" : "haar_corner_generating_function";
    for (std::size_t i = 0; i < n; ++i) pred[i] = (*exact)[i].get_d();
  } else {
    // Monte Carlo corner-weight means: lambda_i / k -> E w_i - E w_{i+1}.
    std::vector<double> ew(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) ew[i] = mpq_class(agg.weight_sums[i]).get_d() / (k * tcount);
    for (std::size_t i = 0; i < n; ++i) pred[i] = ew[i] - ew[i + 1];
    report.predictions["lyapunov"] = pred;
    report.predictions["source"] = "monte_carlo_corner_weights";
  }

  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(est[i] - pred[i]));
  report.criteria.push_back({"lln", worst <= config.tol.lln_abs, config.tol.lln_abs, agg.trials,
                             "max |estimate - prediction| = " + fmt(worst)});

  if (config.spec.is_symplectic()) {
    double sym = 0;
    for (std::size_t i = 0; i < n / 2; ++i) {
      sym = std::max(sym, std::fabs(est[i] + est[n - 1 - i] - est[0] - est[n - 1]));
    }
    report.criteria.push_back({"gsp_symmetry", sym <= config.tol.gsp_symmetry, config.tol.gsp_symmetry, agg.trials,
                               "max |est_i + est_{2n+1-i} - est_1 - est_2n| = " + fmt(sym)});
    bool balanced = true;
    for (const auto& t : trials) balanced = balanced && t.balanced;
    report.criteria.push_back({"balanced_pairs", balanced, 0, agg.trials * config.k_max,
                               balanced ? "lambda(k) balanced at every step" : "unbalanced lambda(k) observed"});
  }
  report.notes.push_back("finite-k estimates are consistent with (not a proof of) the almost-sure limit");
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_clt_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  const auto law = config.spec.finite_law();
  if (!law) throw std::invalid_argument("CLT needs a finitely supported GL SN law (FixedSN or SNMixture)");
  ExperimentReport report;
  report.experiment = "clt";
  report.config = config_to_json(config);
  report.threads = available_threads(config.jobs);
  const std::size_t n = config.spec.n;
  const mpq_class t = t_of(config.spec.p);
  const CornerCovariance cov = corner_weight_covariance(*law, t);
  const auto mean = lln_prediction(*law, t);
  report.predictions["lyapunov"] = rational_array(mean);
  nlohmann::json target_json = nlohmann::json::array();
  nlohmann::json sigma_json = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    target_json.push_back(rational_array(cov.l_sigma_lt[i]));
    sigma_json.push_back(rational_array(cov.sigma[i]));
  }
  report.predictions["sigma"] = sigma_json;
  report.predictions["l_sigma_lt"] = target_json;

  const auto trials = run_trials(config);
  const Aggregate agg = aggregate(trials);
  const mpq_class tq = mpq_of(agg.trials);
  const mpq_class kq = mpq_of(config.k_max);
  std::vector<std::vector<double>> emp(n, std::vector<double>(n)), target(n, std::vector<double>(n));
  double trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class c = (mpq_class(agg.cross[i][j]) - mpq_class(agg.lambda[i].s1 * agg.lambda[j].s1) / tq) /
                          (tq - 1) / kq;
      emp[i][j] = c.get_d();
      target[i][j] = cov.l_sigma_lt[i][j].get_d();
    }
    trace += target[i][i];
  }
  report.empirical["covariance"] = emp;
  report.empirical["k"] = config.k_max;
  report.empirical["trials"] = agg.trials;

  if (trace == 0) {
    bool zero = true;
    for (const auto& row : emp) {
      for (double x : row) zero = zero && x == 0;
    }
    report.notes.push_back("DegenerateCovariance: the limit covariance is zero");
    report.criteria.push_back({"clt_covariance", zero, 0, agg.trials,
                               zero ? "normalized vectors identically zero" : "nonzero empirical covariance"});
  } else {
    double worst_rel = 0, worst_abs = 0;
    bool ok = true;
    const double abs_tol = config.tol.clt_rel * trace / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double diff = std::fabs(emp[i][j] - target[i][j]);
        if (std::fabs(target[i][j]) > 1e-6) {
          worst_rel = std::max(worst_rel, diff / std::fabs(target[i][j]));
          ok = ok && diff <= config.tol.clt_rel * std::fabs(target[i][j]);
        } else {
          worst_abs = std::max(worst_abs, diff);
          ok = ok && diff <= abs_tol;
        }
      }
    }
    report.criteria.push_back({"clt_covariance", ok, config.tol.clt_rel, agg.trials,
                               "max relative error " + fmt(worst_rel) + ", max absolute error on near-zero entries " +
                                   fmt(worst_abs)});
    nlohmann::json moments = nlohmann::json::array();
    const double tcount = static_cast<double>(agg.trials);
    const double skew_band = 3 * std::sqrt(6.0 / tcount);
    const double kurt_band = 3 * std::sqrt(24.0 / tcount);
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i][i] <= 1e-6) continue;
      const double skew = agg.lambda[i].skewness();
      const double kurt = agg.lambda[i].excess_kurtosis();
      moments.push_back({{"coordinate", i + 1}, {"skewness", skew}, {"excess_kurtosis", kurt}});
      const bool pass = std::fabs(skew) <= skew_band && std::fabs(kurt) <= kurt_band;
      report.criteria.push_back({"normality_" + std::to_string(i + 1), pass, 3.0, agg.trials,
                                 "skewness " + fmt(skew) + " (band " + fmt(skew_band) + "), excess kurtosis " +
                                     fmt(kurt) + " (band " + fmt(kurt_band) + ")"});
    }
    report.empirical["moments"] = moments;
  }
  report.notes.push_back("covariance of (lambda(k) - k m)/sqrt(k) over trials, sample covariance with T-1 divisor");
  report.runtime_seconds = seconds_since(start);
  return report;
}

ExperimentReport run_bounded_difference_experiment(const ExperimentConfig& config) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.experiment = "bounded-diff";
  report.config = config_to_json(config);
  report.threads = available_threads(config.jobs);
  const auto trials = run_trials(config);
  std::int64_t stabilized = 0, split = 0, growing = 0;
  nlohmann::json m_values = nlohmann::json::array();
  for (const auto& t : trials) {
    stabilized += t.m_full == t.m_half;
    split += t.split_consistent;
    growing += t.m_quarter < t.m_half && t.m_half < t.m_full;
    m_values.push_back({t.m_quarter, t.m_half, t.m_full});
  }
  const auto count = static_cast<std::int64_t>(trials.size());
  const double frac = static_cast<double>(stabilized) / static_cast<double>(count);
  report.empirical["stabilized_fraction"] = frac;
  report.empirical["split_consistent_fraction"] = static_cast<double>(split) / static_cast<double>(count);
  report.empirical["growing_fraction"] = static_cast<double>(growing) / static_cast<double>(count);
  report.empirical["m_quarter_half_full"] = m_values;
  if (std::holds_alternative<DoublingDiagonal>(config.spec.kind)) {
    report.criteria.push_back({"unbounded_growth", growing == count, 0, count,
                               "M(K/4) < M(K/2) < M(K) in " + std::to_string(growing) + "/" + std::to_string(count) +
                                   " trials"});
    report.notes.push_back("non-split ensemble: growth of sup |lambda - v| is the expected outcome");
  } else {
    report.criteria.push_back({"stabilization", frac >= config.tol.stabilization, config.tol.stabilization, count,
                               "M(K) = M(K/2) in " + std::to_string(stabilized) + "/" + std::to_string(count) +
                                   " trials"});
    report.notes.push_back("stabilization of the running maximum is a finite-k proxy for a bounded supremum");
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

Histogram sample_histogram(std::int64_t samples, std::uint64_t seed, int jobs,
                           const std::function<Signature(RngStream&)>& draw) {
  const auto sigs = map_trials<Signature>(samples, jobs, [&](std::int64_t i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    return draw(rng);
  });
  Histogram h;
  for (const auto& s : sigs) ++h[s];
  return h;
}

}  // namespace padic
