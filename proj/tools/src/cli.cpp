#include "mixgap/tools/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mixgap/chain.hpp"
#include "mixgap/confidence.hpp"
#include "mixgap/error.hpp"
#include "mixgap/estimators.hpp"
#include "mixgap/fixtures.hpp"
#include "mixgap/io.hpp"
#include "mixgap/serialize.hpp"
#include "mixgap/spectral.hpp"
#include "mixgap/tallies.hpp"
#include "mixgap/tools/bench.hpp"

namespace mixgap::tools {

namespace {

using nlohmann::json;

struct Options {
  std::uint64_t seed = 1;
  int lanczos_iters = LanczosConfig{}.max_iter;
  double lanczos_tol = LanczosConfig{}.tol;
  std::size_t dense_threshold = SolverConfig{}.dense_threshold;
  std::optional<std::size_t> states;

  std::string matrix;
  std::string fixture;
  std::string trajectory;
  std::string output;

  std::size_t m = 0;
  std::string start = "0";
  std::string format = "text";
  std::size_t k = 1;

  std::string method;
  double epsilon = 0.1;
  double alpha = kDefaultAlpha;
  double delta = kDefaultDelta;
  double c = kDefaultIntervalConstant;
  std::optional<std::size_t> K;
  std::string csv;

  std::vector<std::size_t> m_grid = {1000, 10000, 100000};
  std::size_t seeds = 20;
  std::size_t threads = 0;
  std::size_t k_max = 10;

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.lanczos.max_iter = lanczos_iters;
    cfg.lanczos.tol = lanczos_tol;
    cfg.lanczos.validate();
    cfg.dense_threshold = dense_threshold;
    return cfg;
  }
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

StochasticMatrix fixture_by_name(const std::string& name) {
  if (name == "cycle3") return fixtures::cycle3();
  if (name == "fast3") return fixtures::fast3();
  for (std::size_t i = 0; i < fixtures::kCannedSeeds.size(); ++i) {
    if (name == "canned" + std::to_string(i)) return fixtures::canned(i);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + name + "' (cycle3, fast3, canned0..canned2)");
}

StochasticMatrix chain_from(const Options& o) {
  if (!o.matrix.empty()) return io::load_matrix(o.matrix);
  if (!o.fixture.empty()) return fixture_by_name(o.fixture);
  throw Error(ErrorCode::InvalidArgument, "a --matrix file or --fixture name is required");
}

Trajectory trajectory_from(const Options& o, std::istream& in) {
  std::optional<std::size_t> n = o.states;
  if (!n && !o.matrix.empty()) n = io::load_matrix(o.matrix).size();
  if (o.trajectory.empty() || o.trajectory == "-") return io::read_trajectory(in, n);
  return io::load_trajectory(o.trajectory, n);
}

// Writes to --output when given, to `out` otherwise.
template <class Writer>
void write_output(const Options& o, std::ostream& out, Writer&& writer, bool binary = false) {
  if (o.output.empty() || o.output == "-") {
    writer(out);
    return;
  }
  std::ofstream file(o.output, binary ? std::ios::binary : std::ios::out);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + o.output + "' for writing");
  writer(file);
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + o.output + "'");
}

void cmd_simulate(const Options& o, std::ostream& out) {
  const auto p = chain_from(o);
  if (o.m == 0) throw Error(ErrorCode::InvalidArgument, "--m must be >= 1");
  StartDistribution start;
  if (o.start == "stationary") {
    start = p.stationary();
  } else {
    std::size_t state = 0;
    const auto [ptr, ec] = std::from_chars(o.start.data(), o.start.data() + o.start.size(), state);
    if (ec != std::errc() || ptr != o.start.data() + o.start.size() || state >= p.size()) {
      throw Error(ErrorCode::InvalidArgument, "--start must be a state index or 'stationary'");
    }
    start = State(state);
  }
  const auto tr = simulate(p, o.m, start, o.seed);
  if (o.format == "binary") {
    write_output(o, out, [&](std::ostream& s) { io::write_trajectory_binary(s, tr); }, true);
  } else {
    write_output(o, out, [&](std::ostream& s) { io::write_trajectory_text(s, tr); });
  }
}

void cmd_stats(const Options& o, std::istream& in, std::ostream& out) {
  const auto tr = trajectory_from(o, in);
  write_output(o, out, [&](std::ostream& s) { emit(s, to_json(tally(tr, o.k))); });
}

void cmd_estimate(const Options& o, std::istream& in, std::ostream& out) {
  const auto tr = trajectory_from(o, in);
  const auto cfg = o.solver();
  json report;
  if (o.method == "pi-star") {
    report = {{"method", "pi-star"}, {"value", pi_star_hat(tr)}};
  } else if (o.method == "ps-prefix") {
    report = to_json(gamma_ps_prefix_hat(tr, o.K.value_or(1), cfg));
  } else if (o.method == "ps-additive") {
    report = to_json(gamma_ps_additive(tr, o.epsilon, cfg));
  } else if (o.method == "ps-amplified") {
    report = to_json(gamma_ps_amplified(tr, {}, cfg));
  } else if (o.method == "ps-adaptive") {
    report = to_json(gamma_ps_adaptive_multiplicative(tr, o.epsilon, cfg));
  } else {
    report = to_json(gamma_dps_hat(tr, o.alpha, o.K, cfg));
  }
  write_output(o, out, [&](std::ostream& s) { emit(s, report); });
}

void write_terms_csv(const std::string& path, const ConfidenceReport& r) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  file << "k,W,V,T,U,gamma_ps_p_hat\n";
  for (const auto& [k, t] : r.per_k_terms) {
    file << k << ',' << json(t.W).dump() << ',' << json(t.V).dump() << ',' << json(t.T).dump() << ','
         << json(t.U).dump() << ',' << json(t.gamma_ps_p_hat).dump() << '\n';
  }
}

void cmd_interval(const Options& o, std::istream& in, std::ostream& out) {
  const auto tr = trajectory_from(o, in);
  const auto report = confidence_interval(tr, o.alpha, o.delta, o.c, o.solver());
  if (!o.csv.empty()) write_terms_csv(o.csv, report);
  write_output(o, out, [&](std::ostream& s) { emit(s, to_json(report)); });
}

void cmd_oracle(const Options& o, std::ostream& out) {
  const auto p = chain_from(o);
  json report = to_json(spectral_report(p));
  report["n"] = p.size();
  report["pi"] = to_json(p.stationary());
  report["pi_star"] = p.pi_star();
  report["reversible"] = is_reversible(p);
  report["gamma_diagnostic"] = gamma_diagnostic(p);
  const auto sandwich = mixing_time_sandwich(p);
  report["t_mix"] = sandwich.t_mix;
  report["sandwich"] = to_json(sandwich);
  write_output(o, out, [&](std::ostream& s) { emit(s, report); });
}

void cmd_bench(const Options& o, std::ostream& out) {
  const auto p = chain_from(o);
  BenchConfig cfg;
  cfg.seed = o.seed;
  cfg.alpha = o.alpha;
  cfg.delta = o.delta;
  cfg.c = o.c;
  cfg.solver = o.solver();
  cfg.threads = o.threads;
  const auto table = bench_convergence(p, o.m_grid, o.seeds, cfg);
  write_output(o, out, [&](std::ostream& s) { write_bench_csv(s, table); });
}

void cmd_lemma_check(const Options& o, std::ostream& out) {
  const auto p = chain_from(o);
  write_output(o, out, [&](std::ostream& s) { emit(s, to_json(verify_lemma_properties(p, o.k_max))); });
}

void add_global(CLI::App& app, Options& o) {
  app.add_option("--seed", o.seed, "Seed for all randomness");
  app.add_option("--lanczos-iters", o.lanczos_iters, "Lanczos iteration cap")->check(CLI::Range(2, 1 << 20));
  app.add_option("--lanczos-tol", o.lanczos_tol, "Lanczos Ritz residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--eig-dense-threshold", o.dense_threshold,
                 "Largest dimension handled by the dense eigensolver");
  app.add_option("--states", o.states, "Number of states of a trajectory")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectral gap and mixing time estimation from a single Markov chain trajectory", "mixgap"};
  app.require_subcommand(1);
  app.fallthrough();
  add_global(app, o);

  auto* simulate_cmd = app.add_subcommand("simulate", "Sample a trajectory from a transition matrix");
  simulate_cmd->add_option("--matrix", o.matrix, "Matrix file (.json or CSV)");
  simulate_cmd->add_option("--fixture", o.fixture, "Built-in chain: cycle3, fast3, canned0..canned2");
  simulate_cmd->add_option("--m", o.m, "Trajectory length")->required();
  simulate_cmd->add_option("--start", o.start, "Start state index or 'stationary'");
  simulate_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "binary"}));
  simulate_cmd->add_option("--output,-o", o.output, "Output file");

  auto* stats_cmd = app.add_subcommand("stats", "Skipped-chain tallies as JSON");
  stats_cmd->add_option("--trajectory", o.trajectory, "Trajectory file, '-' for stdin");
  stats_cmd->add_option("--matrix", o.matrix, "Matrix whose size fixes the state count");
  stats_cmd->add_option("--k", o.k, "Skip rate")->check(CLI::PositiveNumber);
  stats_cmd->add_option("--output,-o", o.output, "Output file");

  auto* estimate_cmd = app.add_subcommand("estimate", "Point estimate from a trajectory");
  estimate_cmd->add_option("--method", o.method, "Estimator")
      ->required()
      ->check(CLI::IsMember({"pi-star", "ps-prefix", "ps-additive", "ps-amplified", "ps-adaptive", "dps"}));
  estimate_cmd->add_option("--epsilon", o.epsilon, "Accuracy parameter");
  estimate_cmd->add_option("--alpha", o.alpha, "Smoothing pseudo-count")->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--K", o.K, "Prefix bound");
  estimate_cmd->add_option("--trajectory", o.trajectory, "Trajectory file, '-' for stdin");
  estimate_cmd->add_option("--matrix", o.matrix, "Matrix whose size fixes the state count");
  estimate_cmd->add_option("--output,-o", o.output, "Output file");

  auto* interval_cmd = app.add_subcommand("interval", "Empirical confidence interval for the dilated gap");
  interval_cmd->add_option("--delta", o.delta, "Confidence parameter")->check(CLI::Range(0.0, 1.0));
  interval_cmd->add_option("--alpha", o.alpha, "Smoothing pseudo-count")->check(CLI::PositiveNumber);
  interval_cmd->add_option("--c-override", o.c, "Constant in the T term")->check(CLI::PositiveNumber);
  interval_cmd->add_option("--trajectory", o.trajectory, "Trajectory file, '-' for stdin");
  interval_cmd->add_option("--matrix", o.matrix, "Matrix whose size fixes the state count");
  interval_cmd->add_option("--csv", o.csv, "Also write per-k terms to this CSV file");
  interval_cmd->add_option("--output,-o", o.output, "Output file");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact spectral quantities of a known chain");
  oracle_cmd->add_option("--matrix", o.matrix, "Matrix file (.json or CSV)");
  oracle_cmd->add_option("--fixture", o.fixture, "Built-in chain");
  oracle_cmd->add_option("--output,-o", o.output, "Output file");

  auto* bench_cmd = app.add_subcommand("bench", "Convergence and coverage table as CSV");
  bench_cmd->add_option("--matrix", o.matrix, "Matrix file (.json or CSV)");
  bench_cmd->add_option("--fixture", o.fixture, "Built-in chain");
  bench_cmd->add_option("--m-grid", o.m_grid, "Trajectory lengths")->delimiter(',');
  bench_cmd->add_option("--seeds", o.seeds, "Trials per length")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--alpha", o.alpha, "Smoothing pseudo-count")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--delta", o.delta, "Confidence parameter")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--c-override", o.c, "Constant in the T term")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", o.threads, "Worker threads (default MIXGAP_THREADS)");
  bench_cmd->add_option("--output,-o", o.output, "Output file");

  auto* lemma_cmd = app.add_subcommand("lemma-check", "Check the skipped-gap inequalities on a known chain");
  lemma_cmd->add_option("--matrix", o.matrix, "Matrix file (.json or CSV)");
  lemma_cmd->add_option("--fixture", o.fixture, "Built-in chain");
  lemma_cmd->add_option("--k-max", o.k_max, "Largest skip parameter")->check(CLI::Range(1, 20));
  lemma_cmd->add_option("--output,-o", o.output, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << json{{"error", to_string(ErrorCode::Parse)}, {"message", e.what()}}.dump() << '\n';
    return kExitIoOrParse;
  }

  try {
    if (*simulate_cmd) cmd_simulate(o, out);
    else if (*stats_cmd) cmd_stats(o, in, out);
    else if (*estimate_cmd) cmd_estimate(o, in, out);
    else if (*interval_cmd) cmd_interval(o, in, out);
    else if (*oracle_cmd) cmd_oracle(o, out);
    else if (*bench_cmd) cmd_bench(o, out);
    else if (*lemma_cmd) cmd_lemma_check(o, out);
  } catch (const Error& e) {
    err << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return is_domain_error(e.code()) ? kExitDomain : kExitIoOrParse;
  }
  return kExitOk;
}

}  // namespace mixgap::tools
