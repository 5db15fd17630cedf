#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mixgap/chain.hpp"
#include "mixgap/confidence.hpp"
#include "mixgap/eigensolve.hpp"
#include "mixgap/tallies.hpp"

namespace mixgap::tools {

struct BenchConfig {
  std::uint64_t seed = 1;
  double alpha = kDefaultAlpha;
  double delta = kDefaultDelta;
  double c = kDefaultIntervalConstant;
  SolverConfig solver;
  /// 0 selects MIXGAP_THREADS, falling back to the hardware concurrency.
  std::size_t threads = 0;
};

struct BenchTrial {
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double point = 0.0;
  double abs_error = 0.0;
  double half_width = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  bool covered = false;
  bool vacuous = false;
  std::size_t K_hat = 0;
  double pi_star_hat = 0.0;
};

struct BenchSummary {
  std::size_t m = 0;
  double median_point = 0.0;
  double median_abs_error = 0.0;
  double median_half_width = 0.0;
  /// median half-width / sqrt(ln^3 m / m)
  double median_scaled_half_width = 0.0;
  double coverage = 0.0;
  double median_pi_star_hat = 0.0;
};

struct BenchTable {
  double oracle_gamma_dps = 0.0;
  double oracle_pi_star = 0.0;
  std::vector<BenchTrial> trials;      // ordered by (m, trial)
  std::vector<BenchSummary> summaries; // one per m, in grid order
};

/// Per-trial seed derived from the base seed and the cell coordinates.
std::uint64_t trial_seed(std::uint64_t base, std::size_t m, std::size_t trial);

/// Simulates `seeds` trajectories per grid length from the stationary start,
/// estimates gamma_dps with its confidence interval, and compares against
/// the exact value. Cells run concurrently; the table does not depend on the
/// thread count.
BenchTable bench_convergence(const StochasticMatrix& p, const std::vector<std::size_t>& m_grid, std::size_t seeds,
                             const BenchConfig& cfg);

void write_bench_csv(std::ostream& out, const BenchTable& table);

std::size_t thread_budget(std::size_t requested);

}  // namespace mixgap::tools
