#include "mixgap/fixtures.hpp"

#include <random>

#include "mixgap/error.hpp"

namespace mixgap::fixtures {

namespace {

void require_states(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "fixture needs at least one state");
}

}  // namespace

StochasticMatrix cycle3() {
  Matrix p(3, 3);
  p << 0.0, 1.0, 0.0,
       0.0, 0.0, 1.0,
       0.5, 0.0, 0.5;
  return StochasticMatrix(std::move(p));
}

StochasticMatrix fast3() {
  Matrix p(3, 3);
  p << 0.5, 0.3, 0.2,
       0.2, 0.5, 0.3,
       0.3, 0.2, 0.5;
  return StochasticMatrix(std::move(p));
}

StochasticMatrix uniform(std::size_t n) {
  require_states(n);
  const auto size = Eigen::Index(n);
  return StochasticMatrix(Matrix::Constant(size, size, 1.0 / double(n)));
}

StochasticMatrix random_ergodic(std::size_t n, std::uint64_t seed) {
  require_states(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto size = Eigen::Index(n);
  Matrix p(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      const double u = unif(rng);
      p(i, j) = 1e-3 + u * u * u;
    }
    p.row(i) /= p.row(i).sum();
  }
  return StochasticMatrix(std::move(p));
}

StochasticMatrix random_reversible(std::size_t n, std::uint64_t seed) {
  require_states(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto size = Eigen::Index(n);
  Matrix w(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = i; j < size; ++j) {
      const double u = unif(rng);
      w(i, j) = w(j, i) = 1e-3 + u * u;
    }
  }
  for (Eigen::Index i = 0; i < size; ++i) w.row(i) /= w.row(i).sum();
  return StochasticMatrix(std::move(w));
}

StochasticMatrix canned(std::size_t index) {
  if (index >= kCannedSeeds.size()) throw Error(ErrorCode::InvalidArgument, "no canned chain with that index");
  return random_ergodic(kCannedStates, kCannedSeeds[index]);
}

}  // namespace mixgap::fixtures
