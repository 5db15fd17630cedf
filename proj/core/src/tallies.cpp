#include "mixgap/tallies.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "mixgap/error.hpp"

namespace mixgap {

SkippedTallies::SkippedTallies(std::size_t k, std::size_t n, std::size_t m, std::vector<Count> visits,
                               std::vector<TransitionCount> transitions)
    : k_(k), n_(n), m_(m), visits_(std::move(visits)), transitions_(std::move(transitions)) {
  if (k_ == 0 || n_ == 0 || m_ == 0) throw Error(ErrorCode::InvalidArgument, "tallies need k, n, m >= 1");
  if (visits_.size() != n_) throw Error(ErrorCode::InvalidArgument, "visit vector length differs from n");
  std::sort(transitions_.begin(), transitions_.end(),
            [](const auto& a, const auto& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  std::vector<Count> outflow(n_, 0);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& tc = transitions_[i];
    if (tc.from >= n_ || tc.to >= n_) throw Error(ErrorCode::InvalidArgument, "transition state outside [0, n)");
    if (i > 0 && transitions_[i - 1].from == tc.from && transitions_[i - 1].to == tc.to) {
      throw Error(ErrorCode::InvalidArgument, "duplicate transition entry");
    }
    outflow[tc.from] += tc.count;
  }
  if (outflow != visits_) throw Error(ErrorCode::InvalidArgument, "row marginals of transitions differ from visits");
  transitions_.erase(std::remove_if(transitions_.begin(), transitions_.end(),
                                    [](const auto& tc) { return tc.count == 0; }),
                     transitions_.end());
}

Count SkippedTallies::transition(State from, State to) const {
  const auto it = std::lower_bound(transitions_.begin(), transitions_.end(), std::pair{from, to},
                                   [](const TransitionCount& tc, const std::pair<State, State>& key) {
                                     return std::tie(tc.from, tc.to) < std::tie(key.first, key.second);
                                   });
  return it != transitions_.end() && it->from == from && it->to == to ? it->count : 0;
}

Count SkippedTallies::n_min() const { return *std::min_element(visits_.begin(), visits_.end()); }

Count SkippedTallies::n_max() const { return *std::max_element(visits_.begin(), visits_.end()); }

std::vector<std::size_t> SkippedTallies::unvisited_states() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n_; ++x) {
    if (visits_[x] == 0) out.push_back(x);
  }
  return out;
}

Matrix SkippedTallies::dense_transitions() const {
  Matrix out = Matrix::Zero(Eigen::Index(n_), Eigen::Index(n_));
  for (const auto& tc : transitions_) out(tc.from, tc.to) = double(tc.count);
  return out;
}

SkippedTallies tally(const Trajectory& tr, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "skip rate k must be >= 1");
  const std::size_t m = tr.size();
  if (m < k + 1) {
    throw Error(ErrorCode::TrajectoryTooShort,
                "trajectory of length " + std::to_string(m) + " has no " + std::to_string(k) + "-skipped pair");
  }
  const std::size_t n = tr.state_count();
  const std::size_t pairs = (m - 1) / k;
  std::vector<Count> visits(n, 0);
  std::vector<TransitionCount> transitions;

  const auto states = tr.states();
  // Dense accumulation while n^2 stays small, hashing beyond.
  if (n <= 1024) {
    std::vector<Count> dense(n * n, 0);
    for (std::size_t t = 0; t < pairs; ++t) {
      const State from = states[t * k];
      const State to = states[(t + 1) * k];
      ++visits[from];
      ++dense[std::size_t(from) * n + to];
    }
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != 0) transitions.push_back({State(i / n), State(i % n), dense[i]});
    }
  } else {
    std::unordered_map<std::uint64_t, Count> sparse;
    for (std::size_t t = 0; t < pairs; ++t) {
      const State from = states[t * k];
      const State to = states[(t + 1) * k];
      ++visits[from];
      ++sparse[(std::uint64_t(from) << 32) | to];
    }
    transitions.reserve(sparse.size());
    for (const auto& [key, count] : sparse) transitions.push_back({State(key >> 32), State(key & 0xFFFFFFFFU), count});
  }
  return SkippedTallies(k, n, m, std::move(visits), std::move(transitions));
}

Matrix unsmoothed_L_hat(const SkippedTallies& t) {
  auto missing = t.unvisited_states();
  if (!missing.empty()) {
    std::string list;
    for (const auto x : missing) list += (list.empty() ? "" : ",") + std::to_string(x);
    throw Error(ErrorCode::UnvisitedState,
                std::to_string(t.skip()) + "-skipped chain never left state(s) {" + list + "}", std::move(missing));
  }
  const auto n = Eigen::Index(t.state_count());
  Matrix l = Matrix::Zero(n, n);
  for (const auto& tc : t.transitions()) {
    l(tc.from, tc.to) = double(tc.count) / std::sqrt(double(t.visits(tc.from)) * double(t.visits(tc.to)));
  }
  return l;
}

SmoothedEstimates smoothed_estimates(const SkippedTallies& t, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  const auto n = Eigen::Index(t.state_count());
  const double nd = double(n);
  SmoothedEstimates out;
  out.alpha = alpha;
  out.p_hat = Matrix::Constant(n, n, alpha);
  for (const auto& tc : t.transitions()) out.p_hat(tc.from, tc.to) += double(tc.count);
  out.pi_hat.resize(n);
  const double denom = double(t.pairs()) + nd * nd * alpha;
  for (Eigen::Index x = 0; x < n; ++x) {
    const double row = double(t.visits(State(x))) + nd * alpha;
    out.p_hat.row(x) /= row;
    out.pi_hat(x) = row / denom;
  }
  const Vector s = out.pi_hat.cwiseSqrt();
  out.l_hat = s.asDiagonal() * out.p_hat * s.cwiseInverse().asDiagonal();
  return out;
}

}  // namespace mixgap
