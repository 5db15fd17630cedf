#include "mixgap/tools/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "mixgap/error.hpp"
#include "mixgap/estimators.hpp"
#include "mixgap/spectral.hpp"

namespace mixgap::tools {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  if (std::isinf(values[mid - 1]) || std::isinf(values[mid])) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::size_t m, std::size_t trial) {
  std::seed_seq seq{std::uint32_t(base), std::uint32_t(base >> 32), std::uint32_t(m), std::uint32_t(m >> 32),
                    std::uint32_t(trial)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t(words[0]) << 32) | words[1];
}

std::size_t thread_budget(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MIXGAP_THREADS")) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
    if (ec == std::errc() && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

BenchTable bench_convergence(const StochasticMatrix& p, const std::vector<std::size_t>& m_grid, std::size_t seeds,
                             const BenchConfig& cfg) {
  if (m_grid.empty() || seeds == 0) throw Error(ErrorCode::InvalidArgument, "bench needs a grid and seeds >= 1");
  for (const auto m : m_grid) {
    if (m < 3) throw Error(ErrorCode::InvalidArgument, "bench lengths must be >= 3");
  }
  BenchTable table;
  table.oracle_gamma_dps = *dilated_pseudo_spectral_gap(p).gamma_dps;
  table.oracle_pi_star = p.pi_star();
  const Vector start = p.stationary();

  table.trials.resize(m_grid.size() * seeds);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t cell = next++; cell < table.trials.size(); cell = next++) {
      try {
        BenchTrial& row = table.trials[cell];
        row.m = m_grid[cell / seeds];
        row.trial = cell % seeds;
        row.seed = trial_seed(cfg.seed, row.m, row.trial);
        const auto tr = simulate(p, row.m, start, row.seed);
        const auto ci = confidence_interval(tr, cfg.alpha, cfg.delta, cfg.c, cfg.solver);
        row.point = ci.point;
        row.abs_error = std::abs(ci.point - table.oracle_gamma_dps);
        row.half_width = ci.half_width;
        row.lower = ci.lower;
        row.upper = ci.upper;
        row.covered = ci.lower <= table.oracle_gamma_dps && table.oracle_gamma_dps <= ci.upper;
        row.vacuous = ci.vacuous;
        row.K_hat = ci.K_hat;
        row.pi_star_hat = pi_star_hat(tr);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(thread_budget(cfg.threads), table.trials.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t g = 0; g < m_grid.size(); ++g) {
    std::vector<double> point, error, width, pistar;
    std::size_t covered = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& row = table.trials[g * seeds + s];
      point.push_back(row.point);
      error.push_back(row.abs_error);
      width.push_back(row.half_width);
      pistar.push_back(row.pi_star_hat);
      covered += row.covered ? 1 : 0;
    }
    BenchSummary sum;
    sum.m = m_grid[g];
    sum.median_point = median(point);
    sum.median_abs_error = median(error);
    sum.median_half_width = median(width);
    const double log_m = std::log(double(sum.m));
    sum.median_scaled_half_width = sum.median_half_width / std::sqrt(log_m * log_m * log_m / double(sum.m));
    sum.coverage = double(covered) / double(seeds);
    sum.median_pi_star_hat = median(pistar);
    table.summaries.push_back(sum);
  }
  return table;
}

void write_bench_csv(std::ostream& out, const BenchTable& table) {
  auto scale = [](std::size_t m) {
    const double log_m = std::log(double(m));
    return std::sqrt(log_m * log_m * log_m / double(m));
  };
  out << "row,m,trial,seed,point,oracle,abs_error,half_width,scaled_half_width,lower,upper,covered,vacuous,K_hat,"
         "pi_star_hat\n";
  for (const auto& r : table.trials) {
    out << "trial," << r.m << ',' << r.trial << ',' << r.seed << ',' << number(r.point) << ','
        << number(table.oracle_gamma_dps) << ',' << number(r.abs_error) << ',' << number(r.half_width) << ','
        << number(r.half_width / scale(r.m)) << ',' << number(r.lower) << ',' << number(r.upper) << ','
        << (r.covered ? 1 : 0) << ',' << (r.vacuous ? 1 : 0) << ',' << r.K_hat << ',' << number(r.pi_star_hat)
        << '\n';
  }
  // On median rows `covered` holds the coverage rate.
  for (const auto& s : table.summaries) {
    out << "median," << s.m << ",,," << number(s.median_point) << ',' << number(table.oracle_gamma_dps) << ','
        << number(s.median_abs_error) << ',' << number(s.median_half_width) << ','
        << number(s.median_scaled_half_width) << ",,," << number(s.coverage) << ",,,"
        << number(s.median_pi_star_hat) << '\n';
  }
}

}  // namespace mixgap::tools
