#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padic_rmt/ensembles.hpp"
#include "padic_rmt/padic_matrix.hpp"
#include "padic_rmt/rng.hpp"
#include "padic_rmt/signature.hpp"

namespace padic {

// SN(diag(p^lambda_prev) * A). A must resolve its own singular numbers at its
// precision; the result is then exact for any lift of A.
Signature product_step(const Signature& lambda_prev, const PadicMatrix& a);

// (|SN(A^(1))|, ..., |SN(A^(n))|).
IntVector corner_weights(const PadicMatrix& a);

struct TrajectoryStep {
  std::int64_t k = 0;
  Signature lambda;
  IntVector v;
  IntVector w;  // corner weights of A_k
  // margin_i(k-1) = v_i(k-1) - v_{i+1}(k) + SN(A_k)_n, i = 1..n-1
  IntVector margin;
  std::int64_t sn_last = 0;  // SN(A_k)_n
  // lambda^(j)(k) for j = 1..n when interpolation is enabled.
  std::vector<IntVector> interpolation;
};

struct EscalationEvent {
  std::int64_t k;
  int precision;
};

struct Trajectory {
  std::size_t n = 0;
  std::vector<TrajectoryStep> steps;  // steps[0] is k = 0
  std::vector<EscalationEvent> escalations;
};

// Steps the coupled (lambda, v) dynamics one matrix at a time, so callers
// can keep only the statistics they need.
class TrajectoryRunner {
 public:
  TrajectoryRunner(EnsembleSpec spec, RngStream stream, bool with_interpolation = false,
                   int max_escalations = 8);

  // Draws A_{k+1} and advances. Returns the new step record.
  const TrajectoryStep& advance();

  const TrajectoryStep& current() const { return current_; }
  const PadicMatrix& last_matrix() const { return *last_matrix_; }
  const std::vector<EscalationEvent>& escalations() const { return escalations_; }

 private:
  EnsembleSpec spec_;
  RngStream stream_;
  bool with_interpolation_;
  int max_escalations_;
  TrajectoryStep current_;
  std::optional<PadicMatrix> last_matrix_;
  std::vector<EscalationEvent> escalations_;
};

Trajectory run_coupled_trajectory(const EnsembleSpec& spec, std::int64_t k_max, RngStream stream,
                                  bool with_interpolation = false);

// lambda^(j)(k+1) from lambda^(j)(k): bottom j entries become
// SN(diag(p^bottom) A^(n-j+1)), top n-j entries are copied from v_next.
IntVector interpolation_step(std::size_t j, const IntVector& state, const IntVector& v_next,
                             const PadicMatrix& a);

// Neighbour relation between lambda^(j) and lambda^(j+1) (1-based j).
bool neighbour_relation_holds(std::size_t j, const IntVector& lower, const IntVector& upper);

struct SplitReport {
  // margins_i(k) for k = 0..K-1, i = 1..n-1.
  std::vector<IntVector> series;
  std::vector<bool> consistent;  // per i
  bool split_consistent = false;
};

// A series is split-consistent when its minimum over the final half of the
// run exceeds its value at the first quarter.
SplitReport split_margins(const Trajectory& traj);
bool split_consistent_series(const IntVector& series);

struct EqualDifferenceVerdict {
  bool precondition_held = false;
  bool equality_held = false;
};

// Uses the bottom j+1 parts of lambda (length n) against the corner A^(n-j).
EqualDifferenceVerdict check_equal_difference(const Signature& lambda, const PadicMatrix& a,
                                              std::size_t j);

std::vector<mpq_class> lyapunov_estimates(const TrajectoryStep& step);

}  // namespace padic
