#pragma once

#include <cstddef>
#include <limits>
#include <map>

#include "mixgap/chain.hpp"
#include "mixgap/eigensolve.hpp"
#include "mixgap/tallies.hpp"

namespace mixgap {

inline constexpr double kDefaultIntervalConstant = 48.0;
inline constexpr double kDefaultDelta = 0.05;
/// Empirical pseudo-spectral gaps at or below this make T undefined.
inline constexpr double kDegenerateGapTol = 1e-12;

/// 2 max_x (sum_y sqrt(N_xy) + 3 sqrt(N_x / 2) sqrt(ln(2 P n / delta)) + a n) / (N_x + a n),
/// where P = floor((m - 1) / k). Natural log.
double term_W(const SkippedTallies& t, double alpha, double delta);

/// sqrt(n) (N_max + a n) / (N_min + a n) W.
double term_V(const SkippedTallies& t, double alpha, double w);

/// c / g * ln(2 sqrt(2 (P + a n^2) / (N_min + a n))) * W, where g is the
/// pseudo-spectral gap of the smoothed empirical matrix.
/// DEGENERATE_EMPIRICAL_GAP when g <= kDegenerateGapTol.
double term_T(const SkippedTallies& t, double alpha, double w, double gamma_ps_of_p_hat,
              double c = kDefaultIntervalConstant);

/// 1/2 max_x max(T / f_x, T / [f_x - T]_+) with f_x = (N_x + a n) / (P + a n^2).
/// +infinity when some f_x <= T and T > 0.
double term_U(const SkippedTallies& t, double alpha, double tt);

struct IntervalTerms {
  double W = 0.0;
  double V = 0.0;
  double T = 0.0;
  double U = 0.0;
  double gamma_ps_p_hat = 0.0;
};

struct ConfidenceReport {
  double point = 0.0;
  double half_width = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  bool vacuous = false;
  std::map<std::size_t, IntervalTerms> per_k_terms;
  double delta_hat = 0.0;
  std::size_t K_hat = 0;
  double alpha = 0.0;
  double delta = 0.0;
  double c = kDefaultIntervalConstant;
  std::size_t m = 0;
};

/// sqrt(ln^3 m / m) * delta / (K n).
double adaptive_delta(std::size_t m, std::size_t K, std::size_t n, double delta);

/// Interval around the adaptive smoothed dilation estimate. A degenerate
/// empirical gap or an infinite U makes the interval [0, 1] with the vacuous
/// flag set. Requires m >= 3, alpha > 0, delta in (0, 1).
ConfidenceReport confidence_interval(const Trajectory& tr, double alpha = kDefaultAlpha,
                                     double delta = kDefaultDelta, double c = kDefaultIntervalConstant,
                                     const SolverConfig& cfg = {});

/// max_x (sum_y sqrt(P(x, y)))^2 / pi(x); never exceeds n / pi_star.
double gamma_diagnostic(const StochasticMatrix& p);

}  // namespace mixgap
