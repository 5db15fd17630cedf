#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mixgap/chain.hpp"

namespace mixgap {

using Count = std::uint64_t;

/// One nonzero transition count N_{xy}.
struct TransitionCount {
  State from = 0;
  State to = 0;
  Count count = 0;
};

/// Visit and transition counts of the k-skipped chain. Visits count the
/// origin X_{1+k(t-1)} of each pair t = 1..floor((m-1)/k).
class SkippedTallies {
 public:
  /// Builds tallies from explicit counts; transitions need not be sorted but
  /// must be unique per (from, to). Checks the pair-count and row-marginal
  /// invariants.
  SkippedTallies(std::size_t k, std::size_t n, std::size_t m, std::vector<Count> visits,
                 std::vector<TransitionCount> transitions);

  std::size_t skip() const noexcept { return k_; }
  std::size_t state_count() const noexcept { return n_; }
  std::size_t trajectory_length() const noexcept { return m_; }
  /// floor((m - 1) / k).
  std::size_t pairs() const noexcept { return (m_ - 1) / k_; }

  std::span<const Count> visits() const noexcept { return visits_; }
  Count visits(State x) const { return visits_[x]; }
  /// Nonzero transition counts sorted by (from, to).
  std::span<const TransitionCount> transitions() const noexcept { return transitions_; }
  Count transition(State from, State to) const;

  Count n_min() const;
  Count n_max() const;
  std::vector<std::size_t> unvisited_states() const;

  Matrix dense_transitions() const;

 private:
  std::size_t k_;
  std::size_t n_;
  std::size_t m_;
  std::vector<Count> visits_;
  std::vector<TransitionCount> transitions_;
};

/// Counts pairs (X_{1+k(t-1)}, X_{1+kt}) in one pass.
/// TRAJECTORY_TOO_SHORT unless m >= k + 1.
SkippedTallies tally(const Trajectory& tr, std::size_t k);

/// N_{xy} / sqrt(N_x N_y). UNVISITED_STATE (with the zero-count states) when
/// some N_x = 0.
Matrix unsmoothed_L_hat(const SkippedTallies& t);

struct SmoothedEstimates {
  double alpha = 0.0;
  Matrix p_hat;   // (N_xy + a) / (N_x + n a)
  Vector pi_hat;  // (N_x + n a) / (floor((m-1)/k) + n^2 a)
  Matrix l_hat;   // D_pi_hat^{1/2} P_hat D_pi_hat^{-1/2}
};

/// Additive smoothing; every entry is strictly positive for alpha > 0.
SmoothedEstimates smoothed_estimates(const SkippedTallies& t, double alpha);

inline constexpr double kDefaultAlpha = 1e-2;

}  // namespace mixgap
