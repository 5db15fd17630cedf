#include "mixgap/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mixgap/error.hpp"

namespace mixgap {

namespace {

constexpr double kSymmetryTol = 1e-10;

void require_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw Error(ErrorCode::NotSymmetric, "matrix deviates from its transpose by more than 1e-10");
  }
}

SymmetricOperator dense_operator(const Matrix& a) {
  return {static_cast<std::size_t>(a.rows()), [&a](const Vector& x, Vector& y) { y.noalias() = a * x; }};
}

Vector random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = unif(rng);
  return v.normalized();
}

// Two passes of classical Gram-Schmidt against the basis.
void orthogonalize(Vector& w, const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : basis) w -= u.dot(w) * u;
  }
}

}  // namespace

void LanczosConfig::validate() const {
  if (max_iter < 2) throw Error(ErrorCode::InvalidArgument, "lanczos max_iter must be >= 2");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "lanczos tol must be > 0");
}

std::vector<double> dense_symmetric_spectrum(const Matrix& a) {
  require_symmetric(a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense eigensolver failed");
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

LanczosResult lanczos_largest(const SymmetricOperator& op, std::size_t count, const LanczosConfig& cfg,
                              const Vector* deflate) {
  cfg.validate();
  const std::size_t dim = op.dim;
  if (dim == 0 || count == 0) throw Error(ErrorCode::InvalidArgument, "lanczos needs a non-empty operator");
  count = std::min(count, dim);

  std::mt19937_64 rng(cfg.seed);
  auto fresh_start = [&](const std::vector<Vector>& basis) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      Vector v = random_unit(rng, dim);
      if (deflate != nullptr) v -= deflate->dot(v) * *deflate;
      orthogonalize(v, basis);
      const double norm = v.norm();
      if (norm > 1e-8) return Vector(v / norm);
    }
    throw Error(ErrorCode::NoConvergence, "could not draw a start vector outside the Krylov basis");
  };

  std::vector<Vector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  const auto steps = std::min<std::size_t>(std::size_t(cfg.max_iter), dim);
  basis.reserve(steps);

  LanczosResult result;
  Vector v = fresh_start(basis);
  Vector w(static_cast<Eigen::Index>(dim));
  double scale = 0.0;

  for (std::size_t j = 0; j < steps; ++j) {
    basis.push_back(v);
    op.apply(v, w);
    const double a = v.dot(w);
    w -= a * v;
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    if (cfg.reorthogonalize) orthogonalize(w, basis);
    alpha.push_back(a);
    const double b = w.norm();
    scale = std::max({scale, std::abs(a), b});

    // Ritz pairs of the tridiagonal projection; residual of pair i is
    // |b * s_{j,i}| where s is the eigenvector of T.
    const auto size = Eigen::Index(alpha.size());
    Eigen::SelfAdjointEigenSolver<Matrix> tri;
    Vector diag = Eigen::Map<const Vector>(alpha.data(), size);
    Vector sub = size > 1 ? Vector(Eigen::Map<const Vector>(beta.data(), size - 1)) : Vector();
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    const std::size_t have = std::min(count, std::size_t(size));
    result.ritz_values.assign(have, 0.0);
    result.residuals.assign(have, 0.0);
    for (std::size_t i = 0; i < have; ++i) {
      const auto col = size - 1 - Eigen::Index(i);  // ascending order from Eigen
      result.ritz_values[i] = tri.eigenvalues()(col);
      result.residuals[i] = std::abs(b * tri.eigenvectors()(size - 1, col));
    }
    result.iterations = int(j + 1);

    const bool enough = std::size_t(size) >= count;
    const bool small_residuals = std::all_of(result.residuals.begin(), result.residuals.end(),
                                             [&](double r) { return r <= cfg.tol; });
    if ((enough && small_residuals) || basis.size() == dim) {
      result.converged = true;
      return result;
    }

    const bool breakdown = b <= 1e-13 * scale;
    if (breakdown) {
      // Invariant subspace smaller than the requested count: continue in a
      // fresh direction with a decoupled tridiagonal block.
      beta.push_back(0.0);
      v = fresh_start(basis);
    } else {
      beta.push_back(b);
      v = w / b;
    }
  }
  result.converged = false;
  return result;
}

double lanczos_second_eigenvalue(const Matrix& s_plus_identity, const LanczosConfig& cfg) {
  require_symmetric(s_plus_identity);
  if (s_plus_identity.rows() < 2) throw Error(ErrorCode::InvalidArgument, "need dimension >= 2");
  const auto res = lanczos_largest(dense_operator(s_plus_identity), 2, cfg);
  if (!res.converged) {
    throw Error(ErrorCode::NoConvergence, "Ritz residual above " + std::to_string(cfg.tol) + " after " +
                                              std::to_string(res.iterations) + " iterations");
  }
  return res.ritz_values[1];
}

double second_largest_eigenvalue(const Matrix& symmetric, const SolverConfig& cfg) {
  if (symmetric.rows() < 2) throw Error(ErrorCode::InvalidArgument, "need dimension >= 2");
  if (std::size_t(symmetric.rows()) <= cfg.dense_threshold) return dense_symmetric_spectrum(symmetric)[1];
  return lanczos_second_eigenvalue(symmetric, cfg.lanczos);
}

double deflated_spectral_radius(const Matrix& l, const Vector& pi_sqrt, const LanczosConfig& cfg) {
  if (l.rows() != l.cols() || pi_sqrt.size() != l.rows()) {
    throw Error(ErrorCode::InvalidArgument, "deflated_spectral_radius: dimension mismatch");
  }
  if (std::abs(pi_sqrt.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "deflation vector must have unit norm");
  }
  const Eigen::Index n = l.rows();
  // (a, b) -> ((L - u^T u) b, (L - u^T u)^T a), never forming the 2n x 2n matrix.
  SymmetricOperator op{std::size_t(2 * n), [&](const Vector& x, Vector& y) {
                         const auto a = x.head(n);
                         const auto b = x.tail(n);
                         y.resize(2 * n);
                         y.head(n).noalias() = l * b;
                         y.head(n) -= pi_sqrt.dot(b) * pi_sqrt;
                         y.tail(n).noalias() = l.transpose() * a;
                         y.tail(n) -= pi_sqrt.dot(a) * pi_sqrt;
                       }};
  // The dilation spectrum is symmetric about zero, so the largest eigenvalue
  // is the spectral radius.
  const auto res = lanczos_largest(op, 1, cfg);
  if (!res.converged) {
    throw Error(ErrorCode::NoConvergence, "deflated Lanczos did not converge in " + std::to_string(res.iterations) +
                                              " iterations");
  }
  return std::max(0.0, res.ritz_values[0]);
}

double dilation_gap(const Matrix& l, const SolverConfig& cfg) {
  Matrix s = generic_dilation(l).matrix();
  s.diagonal().array() += 1.0;
  return 2.0 - second_largest_eigenvalue(s, cfg);
}

}  // namespace mixgap
