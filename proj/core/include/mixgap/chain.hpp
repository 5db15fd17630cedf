#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace mixgap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using State = std::uint32_t;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kFixedPointTol = 1e-10;

/// Row-stochastic square matrix P. Immutable; the stationary distribution is
/// computed on first use and shared between copies.
class StochasticMatrix {
 public:
  /// Validates nonnegativity and unit row sums (tolerance kConstructionTol).
  explicit StochasticMatrix(Matrix rows);

  /// Rescales each row to sum to one. Rows whose sum deviates from one by
  /// more than `tolerance` are rejected, as are zero rows.
  static StochasticMatrix normalized(Matrix rows, double tolerance);

  std::size_t size() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  const Matrix& matrix() const noexcept { return rows_; }
  double operator()(std::size_t x, std::size_t y) const { return rows_(Eigen::Index(x), Eigen::Index(y)); }

  /// Stationary distribution (throws Error{REDUCIBLE} when not irreducible).
  const Vector& stationary() const;

  /// Minimum stationary probability.
  double pi_star() const;

 private:
  struct Cache;
  Matrix rows_;
  std::shared_ptr<Cache> cache_;
};

/// Finite observed path X_1..X_m over states [0, n).
class Trajectory {
 public:
  Trajectory(std::vector<State> states, std::size_t n);

  std::size_t size() const noexcept { return states_.size(); }
  std::size_t state_count() const noexcept { return n_; }
  std::span<const State> states() const noexcept { return states_; }
  State operator[](std::size_t t) const { return states_[t]; }

  /// The k-skipped path X_1, X_{1+k}, X_{1+2k}, ..., X_{1+floor((m-1)/k)k}.
  Trajectory skipped(std::size_t k) const;

 private:
  std::vector<State> states_;
  std::size_t n_;
};

/// Block matrix [[0, A], [B, 0]] of size 2n.
class DilatedMatrix {
 public:
  DilatedMatrix(const Matrix& upper_right, const Matrix& lower_left);

  std::size_t base_size() const noexcept { return base_n_; }
  const Matrix& matrix() const noexcept { return entries_; }
  auto upper_right() const { return entries_.topRightCorner(Eigen::Index(base_n_), Eigen::Index(base_n_)); }
  auto lower_left() const { return entries_.bottomLeftCorner(Eigen::Index(base_n_), Eigen::Index(base_n_)); }

 private:
  std::size_t base_n_;
  Matrix entries_;
};

// Support-graph structure.
bool is_irreducible(const Matrix& p);
/// Period of an irreducible chain: gcd of cycle lengths through state 0.
std::size_t period(const Matrix& p);
bool is_primitive(const Matrix& p);
bool is_reversible(const StochasticMatrix& p, double tol = kConstructionTol);

/// Solves pi P = pi, sum pi = 1. Dense LU up to kDenseStationaryLimit states,
/// power iteration on the lazy chain above.
Vector stationary_distribution(const StochasticMatrix& p);
inline constexpr std::size_t kDenseStationaryLimit = 2048;

/// P*(x,y) = pi(y) P(y,x) / pi(x).
StochasticMatrix time_reversal(const StochasticMatrix& p);

StochasticMatrix matrix_power(const StochasticMatrix& p, std::size_t k);

/// D_pi^{1/2} P D_pi^{-1/2}.
Matrix build_L(const StochasticMatrix& p);

/// [[0, P], [P*, 0]]: stochastic, 2-periodic, reversible w.r.t. (pi, pi)/2.
DilatedMatrix reversible_dilation(const StochasticMatrix& p);

/// [[0, A], [A^T, 0]]: symmetric with eigenvalues +/- singular values of A.
DilatedMatrix generic_dilation(const Matrix& a);

/// (P + P*) / 2.
StochasticMatrix additive_reversiblization(const StochasticMatrix& p);

/// Pi = 1^T pi, the rank-one stationary projector.
Matrix stationary_projector(const StochasticMatrix& p);

using StartDistribution = std::variant<State, Vector>;

/// Samples X_1 ~ start and X_{t+1} ~ P(X_t, .). Deterministic given `seed`.
Trajectory simulate(const StochasticMatrix& p, std::size_t m, const StartDistribution& start,
                    std::uint64_t seed);

/// 1/2 * l1 distance.
double total_variation(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b);

inline constexpr std::size_t kDefaultMixingCap = 1'000'000;

/// Smallest t >= 1 with max_x ||e_x P^t - pi||_TV < threshold.
/// Throws NOT_MIXED_BY_CAP for periodic chains or when `cap` is reached.
std::size_t mixing_time(const StochasticMatrix& p, double threshold = 0.25,
                        std::size_t cap = kDefaultMixingCap);

}  // namespace mixgap
