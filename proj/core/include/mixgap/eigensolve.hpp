#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mixgap/chain.hpp"

namespace mixgap {

struct LanczosConfig {
  int max_iter = 300;
  double tol = 1e-10;
  bool reorthogonalize = true;
  std::uint64_t seed = 0x6d697867u;

  /// Throws INVALID_ARGUMENT unless max_iter >= 2 and tol > 0.
  void validate() const;
};

/// Selects the solver backing second-eigenvalue computations: dense for
/// matrices of dimension <= dense_threshold, Lanczos above.
struct SolverConfig {
  LanczosConfig lanczos;
  std::size_t dense_threshold = 512;
};

/// y = A x for a symmetric operator A of the given dimension.
struct SymmetricOperator {
  std::size_t dim = 0;
  std::function<void(const Vector& x, Vector& y)> apply;
};

struct LanczosResult {
  std::vector<double> ritz_values;  // descending, the requested count
  std::vector<double> residuals;    // ||A v - theta v|| per Ritz value
  int iterations = 0;
  bool converged = false;
};

/// Full real spectrum in descending order. NOT_SYMMETRIC when
/// ||A - A^T||_max > 1e-10.
std::vector<double> dense_symmetric_spectrum(const Matrix& a);

/// Lanczos iteration for the `count` algebraically largest eigenvalues.
/// `deflate` (optional, unit norm) is projected out of the start vector.
/// Does not throw on non-convergence; inspect `converged`.
LanczosResult lanczos_largest(const SymmetricOperator& op, std::size_t count, const LanczosConfig& cfg,
                              const Vector* deflate = nullptr);

/// Second-largest eigenvalue of S + I where S is a symmetric dilation, so the
/// spectrum lies in [0, 2]. NO_CONVERGENCE if the Ritz residual of either of
/// the top two Ritz pairs exceeds cfg.tol after cfg.max_iter steps.
double lanczos_second_eigenvalue(const Matrix& s_plus_identity, const LanczosConfig& cfg);

/// Same as above, dispatched to the dense solver at or below the threshold.
double second_largest_eigenvalue(const Matrix& symmetric, const SolverConfig& cfg);

/// rho(S(L) - S(u^T u)) for the rank-one correction u = pi_sqrt, applied
/// matrix-free on vectors of length 2n.
double deflated_spectral_radius(const Matrix& l, const Vector& pi_sqrt, const LanczosConfig& cfg);

/// Gap 1 - second eigenvalue of S(L), computed as 2 - lambda_2(S(L) + I).
double dilation_gap(const Matrix& l, const SolverConfig& cfg);

}  // namespace mixgap
