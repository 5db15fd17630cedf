#include "mixgap/chain.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "mixgap/error.hpp"

namespace mixgap {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void validate_stochastic(const Matrix& rows, double tol) {
  if (rows.rows() == 0 || rows.rows() != rows.cols()) {
    throw Error(ErrorCode::InvalidArgument, "transition matrix must be square and non-empty, got " + dims(rows));
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      const double v = rows(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative or not finite");
      }
    }
    const double s = rows.row(i).sum();
    if (std::abs(s - 1.0) > tol) {
      throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
  }
}

// States reachable from 0 following edges (forward) or reversed edges.
std::vector<bool> reachable_from_zero(const Matrix& p, bool reversed) {
  const auto n = p.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (Eigen::Index v = 0; v < n; ++v) {
      const double w = reversed ? p(v, u) : p(u, v);
      if (w > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

Vector stationary_dense(const Matrix& p) {
  const auto n = p.rows();
  // (I - P^T) pi^T = 0 with the last equation replaced by normalization.
  Matrix a = Matrix::Identity(n, n) - p.transpose();
  a.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector pi = a.fullPivLu().solve(rhs);
  return pi;
}

Vector stationary_power(const Matrix& p) {
  const auto n = p.rows();
  // Lazy chain (I + P)/2 shares pi and is aperiodic.
  Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / double(n));
  for (int it = 0; it < 1'000'000; ++it) {
    Eigen::RowVectorXd next = 0.5 * (pi + pi * p);
    next /= next.sum();
    const double delta = (next - pi).lpNorm<1>();
    pi = next;
    if (delta < 1e-15) break;
  }
  return pi.transpose();
}

}  // namespace

struct StochasticMatrix::Cache {
  std::once_flag once;
  Vector stationary;
};

StochasticMatrix::StochasticMatrix(Matrix rows) : rows_(std::move(rows)), cache_(std::make_shared<Cache>()) {
  validate_stochastic(rows_, kConstructionTol);
}

StochasticMatrix StochasticMatrix::normalized(Matrix rows, double tolerance) {
  validate_stochastic(rows, tolerance);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) /= rows.row(i).sum();
  return StochasticMatrix(std::move(rows));
}

const Vector& StochasticMatrix::stationary() const {
  // call_once leaves the flag unset if the callable throws, so REDUCIBLE is
  // rethrown on every call.
  std::call_once(cache_->once, [this] { cache_->stationary = stationary_distribution(*this); });
  return cache_->stationary;
}

double StochasticMatrix::pi_star() const { return stationary().minCoeff(); }

Trajectory::Trajectory(std::vector<State> states, std::size_t n) : states_(std::move(states)), n_(n) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "trajectory state count must be positive");
  for (std::size_t t = 0; t < states_.size(); ++t) {
    if (states_[t] >= n_) {
      throw Error(ErrorCode::InvalidArgument, "state " + std::to_string(states_[t]) + " at position " +
                                                  std::to_string(t) + " is outside [0, " + std::to_string(n_) + ")");
    }
  }
}

Trajectory Trajectory::skipped(std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "skip rate must be >= 1");
  std::vector<State> out;
  if (!states_.empty()) {
    out.reserve((states_.size() - 1) / k + 1);
    for (std::size_t t = 0; t < states_.size(); t += k) out.push_back(states_[t]);
  }
  return Trajectory(std::move(out), n_);
}

DilatedMatrix::DilatedMatrix(const Matrix& upper_right, const Matrix& lower_left)
    : base_n_(static_cast<std::size_t>(upper_right.rows())) {
  if (upper_right.rows() != upper_right.cols() || lower_left.rows() != upper_right.rows() ||
      lower_left.cols() != upper_right.cols()) {
    throw Error(ErrorCode::InvalidArgument, "dilation blocks must be square and of equal size");
  }
  const auto n = upper_right.rows();
  entries_ = Matrix::Zero(2 * n, 2 * n);
  entries_.topRightCorner(n, n) = upper_right;
  entries_.bottomLeftCorner(n, n) = lower_left;
}

bool is_irreducible(const Matrix& p) {
  const auto fwd = reachable_from_zero(p, false);
  const auto bwd = reachable_from_zero(p, true);
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    if (!fwd[i] || !bwd[i]) return false;
  }
  return true;
}

std::size_t period(const Matrix& p) {
  if (!is_irreducible(p)) throw Error(ErrorCode::Reducible, "period is defined for irreducible chains only");
  const auto n = p.rows();
  // BFS levels; the period is the gcd of level(u) + 1 - level(v) over edges.
  std::vector<long> level(static_cast<std::size_t>(n), -1);
  std::queue<Eigen::Index> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (Eigen::Index v = 0; v < n; ++v) {
      if (p(u, v) > 0.0 && level[std::size_t(v)] < 0) {
        level[std::size_t(v)] = level[std::size_t(u)] + 1;
        queue.push(v);
      }
    }
  }
  long g = 0;
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      if (p(u, v) > 0.0) g = std::gcd(g, std::abs(level[std::size_t(u)] + 1 - level[std::size_t(v)]));
    }
  }
  return static_cast<std::size_t>(g);
}

bool is_primitive(const Matrix& p) { return is_irreducible(p) && period(p) == 1; }

bool is_reversible(const StochasticMatrix& p, double tol) {
  const Vector& pi = p.stationary();
  const Matrix flow = pi.asDiagonal() * p.matrix();
  return (flow - flow.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Vector stationary_distribution(const StochasticMatrix& p) {
  if (!is_irreducible(p.matrix())) {
    throw Error(ErrorCode::Reducible, "support graph of the transition matrix is not strongly connected");
  }
  Vector pi = p.size() <= kDenseStationaryLimit ? stationary_dense(p.matrix()) : stationary_power(p.matrix());
  // Irreducible chains have pi > 0; clip round-off before renormalizing.
  pi = pi.cwiseMax(std::numeric_limits<double>::min());
  pi /= pi.sum();
  return pi;
}

StochasticMatrix time_reversal(const StochasticMatrix& p) {
  const Vector& pi = p.stationary();
  Matrix rev = pi.cwiseInverse().asDiagonal() * p.matrix().transpose() * pi.asDiagonal();
  for (Eigen::Index i = 0; i < rev.rows(); ++i) rev.row(i) /= rev.row(i).sum();
  return StochasticMatrix(std::move(rev));
}

StochasticMatrix matrix_power(const StochasticMatrix& p, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "matrix_power requires k >= 1");
  Matrix base = p.matrix();
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  bool first = true;
  while (k > 0) {
    if (k & 1U) {
      result = first ? base : Matrix(result * base);
      first = false;
    }
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  for (Eigen::Index i = 0; i < result.rows(); ++i) result.row(i) /= result.row(i).sum();
  return StochasticMatrix(std::move(result));
}

Matrix build_L(const StochasticMatrix& p) {
  const Vector sqrt_pi = p.stationary().cwiseSqrt();
  return sqrt_pi.asDiagonal() * p.matrix() * sqrt_pi.cwiseInverse().asDiagonal();
}

DilatedMatrix reversible_dilation(const StochasticMatrix& p) {
  return DilatedMatrix(p.matrix(), time_reversal(p).matrix());
}

DilatedMatrix generic_dilation(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "generic_dilation requires a square matrix");
  return DilatedMatrix(a, a.transpose());
}

StochasticMatrix additive_reversiblization(const StochasticMatrix& p) {
  Matrix m = 0.5 * (p.matrix() + time_reversal(p).matrix());
  for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) /= m.row(i).sum();
  return StochasticMatrix(std::move(m));
}

Matrix stationary_projector(const StochasticMatrix& p) {
  return Vector::Ones(Eigen::Index(p.size())) * p.stationary().transpose();
}

Trajectory simulate(const StochasticMatrix& p, std::size_t m, const StartDistribution& start, std::uint64_t seed) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "simulate requires m >= 1");
  const auto n = p.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Inverse-CDF sampling against cumulative rows.
  Matrix cdf = p.matrix();
  for (Eigen::Index i = 0; i < cdf.rows(); ++i) {
    for (Eigen::Index j = 1; j < cdf.cols(); ++j) cdf(i, j) += cdf(i, j - 1);
  }
  auto draw = [&](auto&& cumulative_at) -> State {
    const double u = unif(rng);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (u < cumulative_at(j)) return static_cast<State>(j);
    }
    return static_cast<State>(n - 1);
  };

  std::vector<State> states(m);
  if (const auto* fixed = std::get_if<State>(&start)) {
    if (*fixed >= n) throw Error(ErrorCode::InvalidArgument, "start state outside the state space");
    states[0] = *fixed;
  } else {
    const Vector& mu = std::get<Vector>(start);
    if (std::size_t(mu.size()) != n) throw Error(ErrorCode::InvalidArgument, "start distribution has wrong length");
    Vector cum = mu;
    for (Eigen::Index j = 1; j < cum.size(); ++j) cum(j) += cum(j - 1);
    states[0] = draw([&](std::size_t j) { return cum(Eigen::Index(j)) / cum(cum.size() - 1); });
  }
  for (std::size_t t = 1; t < m; ++t) {
    const auto row = Eigen::Index(states[t - 1]);
    states[t] = draw([&](std::size_t j) { return cdf(row, Eigen::Index(j)); });
  }
  return Trajectory(std::move(states), n);
}

double total_variation(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  return 0.5 * (a - b).lpNorm<1>();
}

std::size_t mixing_time(const StochasticMatrix& p, double threshold, std::size_t cap) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "mixing threshold must be positive");
  const Eigen::RowVectorXd pi = p.stationary().transpose();
  if (threshold <= 0.5 && !is_primitive(p.matrix())) {
    // A periodic chain keeps mass 1 - 1/d >= 1/2 off its cyclic class.
    throw Error(ErrorCode::NotMixedByCap, "chain is periodic and never mixes");
  }
  Matrix pt = p.matrix();
  for (std::size_t t = 1; t <= cap; ++t) {
    double worst = 0.0;
    for (Eigen::Index x = 0; x < pt.rows(); ++x) worst = std::max(worst, total_variation(pt.row(x), pi));
    if (worst < threshold) return t;
    pt = pt * p.matrix();
  }
  throw Error(ErrorCode::NotMixedByCap, "no mixing within " + std::to_string(cap) + " steps");
}

}  // namespace mixgap
