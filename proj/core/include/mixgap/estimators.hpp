#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixgap/chain.hpp"
#include "mixgap/eigensolve.hpp"
#include "mixgap/tallies.hpp"

namespace mixgap {

/// Point estimate together with the per-skip values it was assembled from.
struct EstimateReport {
  std::string method;
  double value = 0.0;
  std::size_t K_used = 0;
  /// Per-skip gap estimate before division by k; skipped k are absent.
  std::map<std::size_t, double> per_k_values;
  std::optional<std::size_t> K_star;
  /// States never left by the k-skipped chain, for each k that was skipped.
  std::map<std::size_t, std::vector<std::size_t>> unvisited;
  std::vector<std::string> notes;
};

/// min_x N_x / (m - 1) from the one-step tallies; zero when a state is never
/// left. TRAJECTORY_TOO_SHORT when m < 2.
double pi_star_hat(const Trajectory& tr);

/// 1 - lambda_2(L^T L) for the unsmoothed empirical L of one skip rate.
/// UNVISITED_STATE propagated.
double skipped_gap_hat(const SkippedTallies& t, const SolverConfig& cfg = {});

/// max over usable k <= K of skipped_gap_hat / k. A k whose tallies miss a
/// state (or whose skipped chain has no pair) is recorded and skipped.
/// NO_USABLE_K when nothing is left.
EstimateReport gamma_ps_prefix_hat(const Trajectory& tr, std::size_t K, const SolverConfig& cfg = {});

/// Prefix estimator with K = ceil(2 / epsilon), epsilon in (0, 1).
EstimateReport gamma_ps_additive(const Trajectory& tr, double epsilon, const SolverConfig& cfg = {});

struct AmplifiedConfig {
  std::size_t prefix = 16;
  double threshold = 0.375;
};

/// Scans k = 1, 2, 4, ... and stops at the first k whose prefix estimate on
/// the k-skipped path exceeds the threshold; returns that estimate / k.
/// NO_TRIGGER once the skipped path keeps fewer than two transitions.
EstimateReport gamma_ps_amplified(const Trajectory& tr, const AmplifiedConfig& amp = {},
                                  const SolverConfig& cfg = {});

/// Replays the trigger scan over precomputed per-power estimates, indexed by
/// p for skip 2^p. Returns the first p that fires.
std::optional<std::size_t> amplified_trigger(std::span<const double> estimates_by_power, double threshold);

/// Prefix estimator with K = ceil((N_min / epsilon)^{1/3}) from the one-step
/// tallies, clamped to at least 1; epsilon in (0, 5).
EstimateReport gamma_ps_adaptive_multiplicative(const Trajectory& tr, double epsilon, const SolverConfig& cfg = {});

/// ceil(cbrt(v)) computed exactly for nonnegative v.
std::size_t ceil_cbrt(double v);

/// ceil(N_min^{3/2} / (m ln^{3/2} m)), clamped to at least 1. Requires m >= 3.
std::size_t adaptive_dps_prefix(std::size_t n_min, std::size_t m);

/// 1 - sigma_2 of the smoothed empirical L for one skip rate, computed as
/// 2 - lambda_2(S(L) + I). Clamped to [0, 1].
double smoothed_dilation_gap(const SkippedTallies& t, double alpha, const SolverConfig& cfg = {});

/// max_k smoothed_dilation_gap(tallies[k]) / k over tallies ordered by skip rate.
EstimateReport dps_prefix_from_tallies(std::span<const SkippedTallies> tallies, double alpha,
                                       const SolverConfig& cfg = {});

/// Smoothed dilation estimate over k <= K. When K is omitted the adaptive
/// prefix from the one-step tallies is used. Requires m >= 3.
EstimateReport gamma_dps_hat(const Trajectory& tr, double alpha = kDefaultAlpha,
                             std::optional<std::size_t> K = std::nullopt, const SolverConfig& cfg = {});

}  // namespace mixgap
