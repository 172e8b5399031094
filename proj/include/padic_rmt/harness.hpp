#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/processes.hpp"
#include "padic_rmt/stats.hpp"

#ifdef PADIC_RMT_HAVE_OPENMP
#include <omp.h>
#endif

namespace padic {

struct Tolerances {
  double lln_abs = 0.02;
  double clt_rel = 0.15;
  double tv_max = 0.02;
  double stabilization = 0.95;  // fraction of trials with M(K) = M(K/2)
  double gsp_symmetry = 0.01;
};

struct ExperimentConfig {
  EnsembleSpec spec;
  std::int64_t k_max = 1000;
  std::int64_t trials = 10;
  std::uint64_t master_seed = 1;
  Tolerances tol;
  int jobs = 0;  // 0 = all available threads, 1 = serial reference path
};

struct Criterion {
  std::string name;
  bool pass = false;
  double tolerance = 0;
  std::int64_t sample_size = 0;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config;
  nlohmann::json predictions = nlohmann::json::object();
  nlohmann::json empirical = nlohmann::json::object();
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;
  double runtime_seconds = 0;
  int threads = 1;

  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

inline constexpr int kReportSchemaVersion = 1;

int available_threads(int jobs);

// Runs f(0), ..., f(count-1) and returns the results in index order. jobs = 1
// is the serial reference; otherwise trials are spread over OpenMP threads.
// Results never depend on the schedule because every trial owns its stream.
template <class R, class F>
std::vector<R> map_trials(std::int64_t count, int jobs, F&& f) {
  std::vector<R> out(static_cast<std::size_t>(count));
#ifdef PADIC_RMT_HAVE_OPENMP
  if (jobs != 1) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(available_threads(jobs))
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
#pragma omp critical(padic_rmt_trial_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return out;
  }
#endif
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(i);
  return out;
}

// What one trajectory contributes to the experiments.
struct TrialSummary {
  Signature lambda;            // lambda(K)
  IntVector v;                 // v(K)
  IntVector weight_sums;       // sum over steps of the corner weights
  std::int64_t m_quarter = 0;  // M(K/4), M(T) = max_{k<=T} max_i |lambda_i(k) - v_i(k)|
  std::int64_t m_half = 0;
  std::int64_t m_full = 0;
  bool split_consistent = false;
  std::int64_t escalations = 0;
  bool balanced = true;  // lambda(k) balanced at every step (symplectic specs)
};

TrialSummary run_trial(const ExperimentConfig& config, std::int64_t trial_index);
std::vector<TrialSummary> run_trials(const ExperimentConfig& config);

// Exact mean of the per-trial lambda(K) and of the corner weight sums.
struct Aggregate {
  std::vector<MomentSums> lambda;
  std::vector<std::vector<mpz_class>> cross;  // sum lambda_i lambda_j
  std::vector<mpz_class> weight_sums;
  std::int64_t trials = 0;
};
Aggregate aggregate(const std::vector<TrialSummary>& trials);

// Exact prediction of lambda(k)/k when one is available.
std::optional<std::vector<mpq_class>> exact_lln_prediction(const EnsembleSpec& spec);

ExperimentReport run_lln_experiment(const ExperimentConfig& config);
ExperimentReport run_clt_experiment(const ExperimentConfig& config);
ExperimentReport run_bounded_difference_experiment(const ExperimentConfig& config);

// SN histogram over independent draws; draw(rng) returns one signature.
Histogram sample_histogram(std::int64_t samples, std::uint64_t seed, int jobs,
                           const std::function<Signature(RngStream&)>& draw);

}  // namespace padic
