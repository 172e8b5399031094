#include "padic_rmt/processes.hpp"

#include <algorithm>
#include <stdexcept>

#include "padic_rmt/errors.hpp"
#include "padic_rmt/smith.hpp"

namespace padic {

namespace {

// Throws unless SN(A) is determined at A's precision.
void require_resolved(const Signature& sn, const PadicMatrix& a) {
  if (sn.front() - a.shift() >= a.precision()) {
    throw PrecisionExhausted("step matrix does not resolve its singular numbers");
  }
}

IntVector bottom(const IntVector& x, std::size_t j) { return IntVector(x.end() - static_cast<std::ptrdiff_t>(j), x.end()); }

}  // namespace

Signature product_step(const Signature& lambda_prev, const PadicMatrix& a) {
  if (lambda_prev.size() != a.rows() || a.rows() != a.cols()) {
    throw DimensionMismatch("product_step: len(lambda) must match the square matrix");
  }
  require_resolved(smith_singular_numbers(a), a);
  return scaled_singular_numbers(lambda_prev.parts(), a);
}

IntVector corner_weights(const PadicMatrix& a) {
  IntVector w(a.rows());
  for (std::size_t i = 1; i <= a.rows(); ++i) w[i - 1] = smith_singular_numbers(corner(a, i)).weight();
  return w;
}

IntVector interpolation_step(std::size_t j, const IntVector& state, const IntVector& v_next,
                             const PadicMatrix& a) {
  const std::size_t n = a.rows();
  if (j < 1 || j > n || state.size() != n || v_next.size() != n) {
    throw DimensionMismatch("interpolation_step: bad level or length");
  }
  const Signature low = scaled_singular_numbers(bottom(state, j), corner(a, n - j + 1));
  IntVector out(v_next.begin(), v_next.begin() + static_cast<std::ptrdiff_t>(n - j));
  out.insert(out.end(), low.begin(), low.end());
  return out;
}

bool neighbour_relation_holds(std::size_t j, const IntVector& lower, const IntVector& upper) {
  const std::size_t n = lower.size();
  // 1-based: upper_{n-j} >= lower_{n-j}, upper_{n-j+i} <= lower_{n-j+i} for i = 1..j.
  if (upper[n - j - 1] < lower[n - j - 1]) return false;
  for (std::size_t i = 1; i <= j; ++i) {
    if (upper[n - j - 1 + i] > lower[n - j - 1 + i]) return false;
  }
  return true;
}

TrajectoryRunner::TrajectoryRunner(EnsembleSpec spec, RngStream stream, bool with_interpolation,
                                   int max_escalations)
    : spec_(std::move(spec)),
      stream_(stream),
      with_interpolation_(with_interpolation),
      max_escalations_(max_escalations) {
  spec_.validate();
  const std::size_t n = spec_.n;
  current_.k = 0;
  current_.lambda = Signature::constant(0, n);
  current_.v = IntVector(n, 0);
  current_.w = IntVector(n, 0);
  current_.margin = IntVector(n - 1, 0);
  if (with_interpolation_) current_.interpolation.assign(n, IntVector(n, 0));
}

const TrajectoryStep& TrajectoryRunner::advance() {
  const std::size_t n = spec_.n;
  const std::int64_t k = current_.k + 1;
  int extra = 0;
  for (int attempt = 0;; ++attempt) {
    RngStream rng = stream_.derive(static_cast<std::uint64_t>(k));
    PadicMatrix a = draw_step_matrix(spec_, rng, k, extra);
    try {
      TrajectoryStep next;
      next.k = k;
      const Signature sn = smith_singular_numbers(a);
      require_resolved(sn, a);
      next.w.resize(n);
      next.w[0] = sn.weight();
      for (std::size_t i = 2; i <= n; ++i) next.w[i - 1] = smith_singular_numbers(corner(a, i)).weight();
      next.sn_last = sn.back();
      next.lambda = scaled_singular_numbers(current_.lambda.parts(), a);
      next.v = current_.v;
      for (std::size_t i = 0; i < n; ++i) next.v[i] += next.w[i] - (i + 1 < n ? next.w[i + 1] : 0);
      next.margin.resize(n - 1);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        next.margin[i] = current_.v[i] - next.v[i + 1] + next.sn_last;
      }
      if (with_interpolation_) {
        next.interpolation.resize(n);
        for (std::size_t j = 1; j <= n; ++j) {
          next.interpolation[j - 1] = interpolation_step(j, current_.interpolation[j - 1], next.v, a);
        }
      }
      current_ = std::move(next);
      last_matrix_ = std::move(a);
      return current_;
    } catch (const PrecisionExhausted&) {
      if (attempt >= max_escalations_) throw;
      extra = 2 * (a.precision()) - spec_.step_precision(k);
      escalations_.push_back({k, a.precision() * 2});
    }
  }
}

Trajectory run_coupled_trajectory(const EnsembleSpec& spec, std::int64_t k_max, RngStream stream,
                                  bool with_interpolation) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  TrajectoryRunner runner(spec, stream, with_interpolation);
  Trajectory traj;
  traj.n = spec.n;
  traj.steps.reserve(static_cast<std::size_t>(k_max) + 1);
  traj.steps.push_back(runner.current());
  for (std::int64_t k = 1; k <= k_max; ++k) traj.steps.push_back(runner.advance());
  traj.escalations = runner.escalations();
  return traj;
}

bool split_consistent_series(const IntVector& series) {
  const std::size_t len = series.size();
  if (len < 4) return false;
  const std::int64_t quarter = series[len / 4];
  const std::int64_t late_min = *std::min_element(series.begin() + static_cast<std::ptrdiff_t>(len / 2), series.end());
  return late_min > quarter;
}

SplitReport split_margins(const Trajectory& traj) {
  if (traj.steps.size() < 3) throw std::invalid_argument("split margins need a trajectory of length >= 2");
  SplitReport report;
  const std::size_t n = traj.n;
  report.series.assign(n - 1, IntVector{});
  for (std::size_t s = 1; s < traj.steps.size(); ++s) {
    for (std::size_t i = 0; i + 1 < n; ++i) report.series[i].push_back(traj.steps[s].margin[i]);
  }
  report.split_consistent = n > 1;
  for (const auto& series : report.series) {
    report.consistent.push_back(split_consistent_series(series));
    report.split_consistent = report.split_consistent && report.consistent.back();
  }
  return report;
}

EqualDifferenceVerdict check_equal_difference(const Signature& lambda, const PadicMatrix& a,
                                              std::size_t j) {
  const std::size_t n = a.rows();
  if (j < 1 || j >= n || lambda.size() != n) throw DimensionMismatch("check_equal_difference: bad j");
  const PadicMatrix c = corner(a, n - j);
  const PadicMatrix c_next = corner(a, n - j + 1);
  const Signature sn_c = smith_singular_numbers(c);
  const IntVector low = bottom(lambda.parts(), j + 1);
  const Signature scaled = scaled_singular_numbers(low, c);
  EqualDifferenceVerdict verdict;
  verdict.precondition_held = scaled[1] < low.front() + sn_c.back();
  if (verdict.precondition_held) {
    verdict.equality_held =
        scaled[0] - low.front() == sn_c.weight() - smith_singular_numbers(c_next).weight();
  }
  return verdict;
}

std::vector<mpq_class> lyapunov_estimates(const TrajectoryStep& step) {
  if (step.k < 1) throw std::invalid_argument("Lyapunov estimates need k >= 1");
  std::vector<mpq_class> out;
  for (auto x : step.lambda) {
    mpq_class q(mpz_class(x), mpz_class(step.k));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace padic
