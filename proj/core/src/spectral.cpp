#include "mixgap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "mixgap/eigensolve.hpp"
#include "mixgap/error.hpp"

namespace mixgap {

namespace {

constexpr double kReversibleDispatchTol = 1e-10;

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

double second_singular_value(const Matrix& a) {
  if (a.rows() < 2) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(1);  // sorted descending by Eigen
}

Matrix power_of(const Matrix& a, std::size_t k) {
  Matrix out = a;
  for (std::size_t i = 1; i < k; ++i) out = out * a;
  return out;
}

void require_k(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "skip rate k must be >= 1");
}

enum class StopOn { Ps, Dps };

SpectralReport explore(const StochasticMatrix& p, std::size_t k_cap, StopOn stop) {
  const Matrix l = build_L(p);  // throws REDUCIBLE
  SpectralReport report;
  double best_ps = 0.0;
  double best_dps = 0.0;
  Matrix lk = l;
  for (std::size_t k = 1;; ++k) {
    const bool ps_done = best_ps > 0.0 && double(k) * best_ps >= 1.0;
    const bool dps_done = best_dps > 0.0 && double(k) * best_dps >= 1.0;
    if (ps_done && (stop == StopOn::Ps || dps_done)) {
      report.gamma_ps = best_ps;
      if (dps_done) report.gamma_dps = best_dps;
      break;
    }
    if (k > k_cap) {
      throw Error(ErrorCode::Nonconvergent, "pseudo-spectral gap not certified within k <= " + std::to_string(k_cap));
    }
    const double sigma2 = second_singular_value(lk);
    const double dagger = clamp_unit(1.0 - sigma2 * sigma2);
    const double ddagger = clamp_unit(1.0 - sigma2);
    report.gamma_dagger_at_k[k] = dagger;
    report.gamma_ddagger_at_k[k] = ddagger;
    report.k_explored = k;
    if (dagger / double(k) > best_ps) {
      best_ps = dagger / double(k);
      report.k_ps = k;
    }
    if (ddagger / double(k) > best_dps) {
      best_dps = ddagger / double(k);
      report.k_dps = k;
    }
    lk = lk * l;
  }
  return report;
}

}  // namespace

double absolute_spectral_gap(const StochasticMatrix& p) {
  const auto n = Eigen::Index(p.size());
  if (n == 1) return 1.0;
  std::vector<double> moduli;
  if (is_reversible(p, kReversibleDispatchTol)) {
    Matrix l = build_L(p);
    l = 0.5 * (l + l.transpose());
    for (const double v : dense_symmetric_spectrum(l)) moduli.push_back(v);
    // Drop the Perron eigenvalue (closest to one).
    const auto perron = std::min_element(moduli.begin(), moduli.end(),
                                         [](double a, double b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
    moduli.erase(perron);
    for (auto& v : moduli) v = std::abs(v);
  } else {
    Eigen::EigenSolver<Matrix> solver(p.matrix(), false);
    std::vector<std::complex<double>> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    const auto perron = std::min_element(values.begin(), values.end(), [](auto a, auto b) {
      return std::abs(a - 1.0) < std::abs(b - 1.0);
    });
    values.erase(perron);
    for (const auto& v : values) moduli.push_back(std::abs(v));
  }
  return clamp_unit(1.0 - *std::max_element(moduli.begin(), moduli.end()));
}

double absolute_spectral_gap_projected(const StochasticMatrix& p) {
  const Vector sqrt_pi = p.stationary().cwiseSqrt();
  Matrix deflated = build_L(p) - sqrt_pi * sqrt_pi.transpose();
  deflated = 0.5 * (deflated + deflated.transpose());
  const auto spectrum = dense_symmetric_spectrum(deflated);
  const double rho = std::max(std::abs(spectrum.front()), std::abs(spectrum.back()));
  return clamp_unit(1.0 - rho);
}

double gamma_dagger(const StochasticMatrix& p, std::size_t k) {
  require_k(k);
  const double s = second_singular_value(power_of(build_L(p), k));
  return clamp_unit(1.0 - s * s);
}

double gamma_ddagger(const StochasticMatrix& p, std::size_t k) {
  require_k(k);
  return clamp_unit(1.0 - second_singular_value(power_of(build_L(p), k)));
}

double pi_norm(const Matrix& a, const Vector& pi) {
  const Vector s = pi.cwiseSqrt();
  const Matrix conj = s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Matrix> svd(conj);
  return svd.singularValues()(0);
}

double skipped_product_norm(const StochasticMatrix& p, std::size_t k) {
  require_k(k);
  const Matrix proj = stationary_projector(p);
  const Matrix fwd = p.matrix() - proj;
  const Matrix bwd = time_reversal(p).matrix() - proj;
  return pi_norm(power_of(bwd, k) * power_of(fwd, k), p.stationary());
}

double gamma_dagger_via_norm(const StochasticMatrix& p, std::size_t k) {
  return clamp_unit(1.0 - skipped_product_norm(p, k));
}

double gamma_ddagger_via_dilation(const StochasticMatrix& p, std::size_t k) {
  require_k(k);
  if (p.size() == 1) return 1.0;
  const Matrix s = generic_dilation(power_of(build_L(p), k)).matrix();
  return clamp_unit(1.0 - dense_symmetric_spectrum(s)[1]);
}

SpectralReport pseudo_spectral_gap(const StochasticMatrix& p, std::size_t k_cap) {
  return explore(p, k_cap, StopOn::Ps);
}

SpectralReport dilated_pseudo_spectral_gap(const StochasticMatrix& p, std::size_t k_cap) {
  return explore(p, k_cap, StopOn::Dps);
}

SpectralReport spectral_report(const StochasticMatrix& p, std::size_t k_cap) {
  auto report = explore(p, k_cap, StopOn::Dps);
  if (is_reversible(p, kReversibleDispatchTol)) report.gamma_star = absolute_spectral_gap(p);
  return report;
}

double gamma_ps_prefix(const StochasticMatrix& p, std::size_t prefix) {
  require_k(prefix);
  const Matrix l = build_L(p);
  Matrix lk = l;
  double best = 0.0;
  for (std::size_t k = 1; k <= prefix; ++k) {
    const double s = second_singular_value(lk);
    best = std::max(best, clamp_unit(1.0 - s * s) / double(k));
    lk = lk * l;
  }
  return best;
}

double gamma_dps_prefix(const StochasticMatrix& p, std::size_t prefix) {
  require_k(prefix);
  const Matrix l = build_L(p);
  Matrix lk = l;
  double best = 0.0;
  for (std::size_t k = 1; k <= prefix; ++k) {
    best = std::max(best, clamp_unit(1.0 - second_singular_value(lk)) / double(k));
    lk = lk * l;
  }
  return best;
}

std::size_t LemmaLedger::violations() const {
  return std::size_t(std::count_if(checks.begin(), checks.end(), [](const LemmaCheck& c) { return !c.passed; }));
}

LemmaLedger verify_lemma_properties(const StochasticMatrix& p, std::size_t k_max) {
  if (k_max == 0 || k_max > 20) throw Error(ErrorCode::InvalidArgument, "k_max must lie in [1, 20]");
  LemmaLedger ledger;
  auto record = [&](std::string lemma, std::string params, double lhs, double rhs, bool strict) {
    const bool ok = strict ? lhs < rhs + kLemmaSlack : lhs <= rhs + kLemmaSlack;
    ledger.checks.push_back({std::move(lemma), std::move(params), lhs, rhs, strict, ok});
  };

  // Sub-multiplicativity of ||(P*-Pi)^k (P-Pi)^k||_pi.
  std::vector<double> norms(k_max + 1, 0.0);
  for (std::size_t k = 1; k <= k_max; ++k) norms[k] = skipped_product_norm(p, k);
  for (std::size_t r = 1; r < k_max; ++r) {
    for (std::size_t s = 1; r + s <= k_max; ++s) {
      record("submultiplicative", "r=" + std::to_string(r) + ",s=" + std::to_string(s), norms[r + s], norms[r] * norms[s], false);
    }
  }

  const auto base = pseudo_spectral_gap(p);
  const double gps = *base.gamma_ps;
  const double kps = double(base.k_ps);
  const double pi_star = p.pi_star();
  const double termination_p = std::exp2(std::ceil(std::log2(1.0 / gps)));
  const double shim = 2.0 * std::log(4.0 * std::numbers::e / pi_star) + 2.0;

  for (std::size_t pp = 1; pp <= k_max; ++pp) {
    const double pd = double(pp);
    const double skipped = *pseudo_spectral_gap(matrix_power(p, pp)).gamma_ps;
    const std::string params = "p=" + std::to_string(pp);
    record("skip-lower", params, pd * gps * (1.0 - pd * kps * gps / 2.0), skipped, true);
    record("skip-upper", params, skipped, pd * gps, false);
    if (pd >= termination_p) record("skip-above-half", params, 0.5, skipped, true);
    if (pd < 1.0 / gps) record("skip-short-range", params, pd * gps / shim, skipped, true);
  }
  return ledger;
}

bool MixingSandwich::holds(double slack) const {
  const double t = double(t_mix);
  bool ok = ps_lower <= t + slack && t <= ps_upper + slack && dps_lower <= t + slack && t <= dps_upper + slack;
  if (rev_lower && rev_upper) ok = ok && *rev_lower <= t + slack && t <= *rev_upper + slack;
  return ok;
}

MixingSandwich mixing_time_sandwich(const StochasticMatrix& p) {
  const auto report = spectral_report(p);
  const double pi_star = p.pi_star();
  const double log_term = std::log(4.0 * std::numbers::e / pi_star);
  MixingSandwich out;
  out.ps_lower = 1.0 / (2.0 * *report.gamma_ps);
  out.ps_upper = log_term / *report.gamma_ps;
  out.dps_lower = 1.0 / (4.0 * *report.gamma_dps);
  out.dps_upper = log_term / *report.gamma_dps;
  if (report.gamma_star) {
    const double gs = *report.gamma_star;
    out.rev_lower = (1.0 / gs - 1.0) * std::numbers::ln2;
    out.rev_upper = std::log(4.0 / pi_star) / gs;
  }
  out.t_mix = mixing_time(p);
  return out;
}

}  // namespace mixgap
