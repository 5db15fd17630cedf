#include "mixgap/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixgap/error.hpp"
#include "mixgap/estimators.hpp"
#include "mixgap/spectral.hpp"

namespace mixgap {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
}

}  // namespace

double term_W(const SkippedTallies& t, double alpha, double delta) {
  require_alpha(alpha);
  require_delta(delta);
  const double n = double(t.state_count());
  const double log_root = std::sqrt(std::log(2.0 * double(t.pairs()) * n / delta));
  std::vector<double> root_sums(t.state_count(), 0.0);
  for (const auto& tc : t.transitions()) root_sums[tc.from] += std::sqrt(double(tc.count));
  double best = 0.0;
  for (std::size_t x = 0; x < t.state_count(); ++x) {
    const double visits = double(t.visits(State(x)));
    const double spread = visits > 0.0 ? 3.0 * std::sqrt(visits / 2.0) * log_root : 0.0;
    best = std::max(best, (root_sums[x] + spread + alpha * n) / (visits + alpha * n));
  }
  return 2.0 * best;
}

double term_V(const SkippedTallies& t, double alpha, double w) {
  require_alpha(alpha);
  const double n = double(t.state_count());
  return std::sqrt(n) * (double(t.n_max()) + alpha * n) / (double(t.n_min()) + alpha * n) * w;
}

double term_T(const SkippedTallies& t, double alpha, double w, double gamma_ps_of_p_hat, double c) {
  require_alpha(alpha);
  if (!(gamma_ps_of_p_hat > kDegenerateGapTol)) {
    throw Error(ErrorCode::DegenerateEmpiricalGap,
                "pseudo-spectral gap of the smoothed empirical matrix is " + std::to_string(gamma_ps_of_p_hat));
  }
  const double n = double(t.state_count());
  const double ratio = 2.0 * (double(t.pairs()) + alpha * n * n) / (double(t.n_min()) + alpha * n);
  return c / gamma_ps_of_p_hat * std::log(2.0 * std::sqrt(ratio)) * w;
}

double term_U(const SkippedTallies& t, double alpha, double tt) {
  require_alpha(alpha);
  if (tt == 0.0) return 0.0;
  const double n = double(t.state_count());
  const double denom = double(t.pairs()) + alpha * n * n;
  double best = 0.0;
  for (std::size_t x = 0; x < t.state_count(); ++x) {
    const double freq = (double(t.visits(State(x))) + alpha * n) / denom;
    const double gap = freq - tt;
    if (gap <= 0.0) return std::numeric_limits<double>::infinity();
    best = std::max({best, tt / freq, tt / gap});
  }
  return 0.5 * best;
}

double adaptive_delta(std::size_t m, std::size_t K, std::size_t n, double delta) {
  if (m < 3) throw Error(ErrorCode::TrajectoryTooShort, "adaptive delta needs m >= 3");
  const double log_m = std::log(double(m));
  return std::sqrt(log_m * log_m * log_m / double(m)) * delta / (double(K) * double(n));
}

ConfidenceReport confidence_interval(const Trajectory& tr, double alpha, double delta, double c,
                                     const SolverConfig& cfg) {
  require_alpha(alpha);
  require_delta(delta);
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "interval constant must be > 0");
  if (tr.size() < 3) throw Error(ErrorCode::TrajectoryTooShort, "confidence interval needs m >= 3");

  ConfidenceReport report;
  report.alpha = alpha;
  report.delta = delta;
  report.c = c;
  report.m = tr.size();

  const auto estimate = gamma_dps_hat(tr, alpha, std::nullopt, cfg);
  report.point = estimate.value;
  report.K_hat = estimate.K_used;
  report.delta_hat = adaptive_delta(tr.size(), report.K_hat, tr.state_count(), delta);

  double worst = 0.0;
  for (std::size_t k = 1; k <= report.K_hat && tr.size() >= k + 1; ++k) {
    const auto t = tally(tr, k);
    IntervalTerms terms;
    terms.W = term_W(t, alpha, report.delta_hat);
    terms.V = term_V(t, alpha, terms.W);
    const auto smoothed = smoothed_estimates(t, alpha);
    terms.gamma_ps_p_hat = *pseudo_spectral_gap(StochasticMatrix::normalized(smoothed.p_hat, 1e-9)).gamma_ps;
    if (terms.gamma_ps_p_hat <= kDegenerateGapTol) {
      terms.T = std::numeric_limits<double>::infinity();
      terms.U = std::numeric_limits<double>::infinity();
      report.vacuous = true;
    } else {
      terms.T = term_T(t, alpha, terms.W, terms.gamma_ps_p_hat, c);
      terms.U = term_U(t, alpha, terms.T);
      if (std::isinf(terms.U)) report.vacuous = true;
    }
    report.per_k_terms[k] = terms;
    worst = std::max(worst, (terms.V + terms.U * (2.0 + terms.U)) / double(k));
  }

  report.half_width = 1.0 / double(report.K_hat) + worst;
  if (report.vacuous) {
    report.lower = 0.0;
    report.upper = 1.0;
  } else {
    report.lower = std::max(report.point - report.half_width, 0.0);
    report.upper = std::min(report.point + report.half_width, 1.0);
  }
  return report;
}

double gamma_diagnostic(const StochasticMatrix& p) {
  const Vector& pi = p.stationary();
  double best = 0.0;
  for (Eigen::Index x = 0; x < pi.size(); ++x) {
    const double root_sum = p.matrix().row(x).cwiseAbs().cwiseSqrt().sum();
    best = std::max(best, root_sum * root_sum / pi(x));
  }
  return best;
}

}  // namespace mixgap
