#include "mixgap/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixgap/error.hpp"

namespace mixgap {

namespace {

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void require_length(const Trajectory& tr, std::size_t min_m) {
  if (tr.size() < min_m) {
    throw Error(ErrorCode::TrajectoryTooShort, "trajectory of length " + std::to_string(tr.size()) +
                                                   " is shorter than the required " + std::to_string(min_m));
  }
}

// Rounds values within 1e-9 (relative) of an integer onto it before taking
// the ceiling, so that 2 / 0.5 or 1000^{1/3} do not drift upward.
std::size_t guarded_ceil(double v) {
  if (!(v > 0.0)) return 0;
  const double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, r)) return std::size_t(r);
  return std::size_t(std::ceil(v));
}

void fold_max(EstimateReport& report, std::size_t k, double gap) {
  report.per_k_values[k] = gap;
  report.value = std::max(report.value, gap / double(k));
}

}  // namespace

double pi_star_hat(const Trajectory& tr) {
  require_length(tr, 2);
  return double(tally(tr, 1).n_min()) / double(tr.size() - 1);
}

double skipped_gap_hat(const SkippedTallies& t, const SolverConfig& cfg) {
  const Matrix l = unsmoothed_L_hat(t);
  if (l.rows() == 1) return 1.0;
  Matrix gram = l.transpose() * l;
  gram = 0.5 * (gram + gram.transpose());
  return clamp_unit(1.0 - second_largest_eigenvalue(gram, cfg));
}

EstimateReport gamma_ps_prefix_hat(const Trajectory& tr, std::size_t K, const SolverConfig& cfg) {
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "prefix bound K must be >= 1");
  EstimateReport report;
  report.method = "ps-prefix";
  report.K_used = K;
  for (std::size_t k = 1; k <= K; ++k) {
    if (tr.size() < k + 1) {
      report.notes.push_back("k=" + std::to_string(k) + ": trajectory has no " + std::to_string(k) +
                             "-skipped pair");
      continue;
    }
    try {
      fold_max(report, k, skipped_gap_hat(tally(tr, k), cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnvisitedState) throw;
      report.unvisited[k] = e.states();
    }
  }
  if (report.per_k_values.empty()) {
    throw Error(ErrorCode::NoUsableK, "every skip rate k <= " + std::to_string(K) + " has an unvisited state");
  }
  report.value = clamp_unit(report.value);
  return report;
}

EstimateReport gamma_ps_additive(const Trajectory& tr, double epsilon, const SolverConfig& cfg) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  auto report = gamma_ps_prefix_hat(tr, guarded_ceil(2.0 / epsilon), cfg);
  report.method = "ps-additive";
  return report;
}

std::optional<std::size_t> amplified_trigger(std::span<const double> estimates_by_power, double threshold) {
  for (std::size_t p = 0; p < estimates_by_power.size(); ++p) {
    if (estimates_by_power[p] > threshold) return p;
  }
  return std::nullopt;
}

EstimateReport gamma_ps_amplified(const Trajectory& tr, const AmplifiedConfig& amp, const SolverConfig& cfg) {
  if (amp.prefix == 0) throw Error(ErrorCode::InvalidArgument, "amplified prefix must be >= 1");
  EstimateReport report;
  report.method = "ps-amplified";
  report.K_used = amp.prefix;
  for (std::size_t p = 0; p < 64; ++p) {
    const std::size_t skip = std::size_t(1) << p;
    const Trajectory skipped = tr.skipped(skip);
    if (skipped.size() < 3) break;
    double estimate = 0.0;
    try {
      estimate = gamma_ps_prefix_hat(skipped, amp.prefix, cfg).value;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoUsableK) throw;
      report.notes.push_back("k=" + std::to_string(skip) + ": no usable prefix skip");
      continue;
    }
    report.per_k_values[skip] = estimate;
    if (estimate > amp.threshold) {
      report.K_star = skip;
      report.value = clamp_unit(estimate / double(skip));
      return report;
    }
  }
  throw Error(ErrorCode::NoTrigger, "skipped estimates never exceeded " + std::to_string(amp.threshold) +
                                        " before the trajectory was exhausted");
}

std::size_t ceil_cbrt(double v) {
  if (!(v > 0.0)) return 0;
  auto k = std::size_t(std::ceil(std::cbrt(v)));
  auto cube = [](std::size_t x) { return double(x) * double(x) * double(x); };
  while (k > 0 && cube(k - 1) >= v) --k;
  while (cube(k) < v) ++k;
  return k;
}

EstimateReport gamma_ps_adaptive_multiplicative(const Trajectory& tr, double epsilon, const SolverConfig& cfg) {
  if (!(epsilon > 0.0 && epsilon < 5.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 5)");
  require_length(tr, 2);
  const Count n_min = tally(tr, 1).n_min();
  std::size_t K = ceil_cbrt(double(n_min) / epsilon);
  std::vector<std::string> notes;
  if (K == 0) {
    K = 1;
    notes.push_back("adaptive prefix clamped to 1 (N_min = 0)");
  }
  auto report = gamma_ps_prefix_hat(tr, K, cfg);
  report.method = "ps-adaptive";
  report.notes.insert(report.notes.begin(), notes.begin(), notes.end());
  return report;
}

std::size_t adaptive_dps_prefix(std::size_t n_min, std::size_t m) {
  if (m < 3) throw Error(ErrorCode::TrajectoryTooShort, "adaptive prefix needs m >= 3");
  const double log_m = std::log(double(m));
  const double ratio = std::pow(double(n_min), 1.5) / (double(m) * std::pow(log_m, 1.5));
  return std::max<std::size_t>(1, guarded_ceil(ratio));
}

double smoothed_dilation_gap(const SkippedTallies& t, double alpha, const SolverConfig& cfg) {
  const auto est = smoothed_estimates(t, alpha);
  return clamp_unit(dilation_gap(est.l_hat, cfg));
}

EstimateReport dps_prefix_from_tallies(std::span<const SkippedTallies> tallies, double alpha,
                                       const SolverConfig& cfg) {
  if (tallies.empty()) throw Error(ErrorCode::InvalidArgument, "need tallies for at least one skip rate");
  EstimateReport report;
  report.method = "dps";
  report.K_used = tallies.size();
  for (const auto& t : tallies) fold_max(report, t.skip(), smoothed_dilation_gap(t, alpha, cfg));
  report.value = clamp_unit(report.value);
  return report;
}

EstimateReport gamma_dps_hat(const Trajectory& tr, double alpha, std::optional<std::size_t> K,
                             const SolverConfig& cfg) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  require_length(tr, 3);
  std::vector<std::string> notes;
  std::size_t prefix = 0;
  if (K) {
    if (*K == 0) throw Error(ErrorCode::InvalidArgument, "prefix bound K must be >= 1");
    prefix = *K;
  } else {
    const Count n_min = tally(tr, 1).n_min();
    prefix = adaptive_dps_prefix(n_min, tr.size());
    if (n_min == 0) notes.push_back("adaptive prefix clamped to 1 (N_min = 0)");
  }
  std::vector<SkippedTallies> tallies;
  for (std::size_t k = 1; k <= prefix; ++k) {
    if (tr.size() < k + 1) {
      notes.push_back("k=" + std::to_string(k) + ": trajectory has no " + std::to_string(k) + "-skipped pair");
      break;
    }
    tallies.push_back(tally(tr, k));
  }
  auto report = dps_prefix_from_tallies(tallies, alpha, cfg);
  report.K_used = prefix;
  report.notes = std::move(notes);
  return report;
}

}  // namespace mixgap
