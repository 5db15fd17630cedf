#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixgap/chain.hpp"

namespace mixgap {

/// Exact spectral quantities of a known ergodic chain.
struct SpectralReport {
  std::optional<double> gamma_star;                     // reversible chains only
  std::map<std::size_t, double> gamma_dagger_at_k;      // gamma_dagger(P^k)
  std::map<std::size_t, double> gamma_ddagger_at_k;     // gamma_ddagger(P^k)
  std::optional<double> gamma_ps;
  std::optional<double> gamma_dps;
  std::size_t k_ps = 0;   // smallest maximizer of gamma_dagger(P^k)/k
  std::size_t k_dps = 0;  // smallest maximizer of gamma_ddagger(P^k)/k
  std::size_t k_explored = 0;
};

inline constexpr std::size_t kDefaultOracleKCap = 100'000;

/// gamma_star = 1 - max{|lambda| : lambda in spectrum(P), lambda != 1}. Uses the
/// symmetric L for reversible chains and the complex spectrum otherwise.
double absolute_spectral_gap(const StochasticMatrix& p);

/// 1 - rho(L - sqrt(pi)^T sqrt(pi)); an independent route valid for
/// reversible chains.
double absolute_spectral_gap_projected(const StochasticMatrix& p);

/// gamma_dagger(P^k) = 1 - lambda_2(L^k^T L^k) = 1 - sigma_2(L^k)^2.
double gamma_dagger(const StochasticMatrix& p, std::size_t k);

/// gamma_ddagger(P^k) = 1 - sigma_2(L^k).
double gamma_ddagger(const StochasticMatrix& p, std::size_t k);

/// ||A||_pi = ||D^{1/2} A D^{-1/2}||_2.
double pi_norm(const Matrix& a, const Vector& pi);

/// ||(P* - Pi)^k (P - Pi)^k||_pi, from explicit matrix products.
double skipped_product_norm(const StochasticMatrix& p, std::size_t k);

/// 1 - skipped_product_norm(P, k); equals gamma_dagger(P, k).
double gamma_dagger_via_norm(const StochasticMatrix& p, std::size_t k);

/// 1 - (second eigenvalue of S(L^k)) from a dense 2n x 2n eigensolve.
double gamma_ddagger_via_dilation(const StochasticMatrix& p, std::size_t k);

/// Exact gamma_ps via k = 1, 2, ... stopping once k * best >= 1, since
/// gamma_dagger(P^k)/k <= 1/k. NONCONVERGENT if `k_cap` is passed first.
SpectralReport pseudo_spectral_gap(const StochasticMatrix& p, std::size_t k_cap = kDefaultOracleKCap);

/// Same loop for gamma_dps; gamma_ps is certified too because gamma_dps <= gamma_ps.
SpectralReport dilated_pseudo_spectral_gap(const StochasticMatrix& p, std::size_t k_cap = kDefaultOracleKCap);

/// dilated_pseudo_spectral_gap plus gamma_star when P is reversible.
SpectralReport spectral_report(const StochasticMatrix& p, std::size_t k_cap = kDefaultOracleKCap);

/// Truncated versions max_{k <= K} gamma(P^k)/k.
double gamma_ps_prefix(const StochasticMatrix& p, std::size_t prefix);
double gamma_dps_prefix(const StochasticMatrix& p, std::size_t prefix);

struct LemmaCheck {
  std::string lemma;     // "submultiplicative", "skip-lower", ...
  std::string params;    // e.g. "r=1,s=2"
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = false;   // lhs < rhs instead of lhs <= rhs
  bool passed = false;
};

struct LemmaLedger {
  std::vector<LemmaCheck> checks;
  std::size_t violations() const;
};

inline constexpr double kLemmaSlack = 1e-9;

/// Checks sub-multiplicativity of the skipped product norm and the three
/// skipped pseudo-spectral gap bounds for parameters up to k_max (<= 20).
LemmaLedger verify_lemma_properties(const StochasticMatrix& p, std::size_t k_max);

struct MixingSandwich {
  double ps_lower = 0.0;   // 1 / (2 gamma_ps)
  double ps_upper = 0.0;   // log(4e / pi_star) / gamma_ps
  double dps_lower = 0.0;  // 1 / (4 gamma_dps)
  double dps_upper = 0.0;  // log(4e / pi_star) / gamma_dps
  std::optional<double> rev_lower;  // (1/gamma_star - 1) log 2
  std::optional<double> rev_upper;  // log(4 / pi_star) / gamma_star
  std::size_t t_mix = 0;
  bool holds(double slack = kLemmaSlack) const;
};

MixingSandwich mixing_time_sandwich(const StochasticMatrix& p);

}  // namespace mixgap
