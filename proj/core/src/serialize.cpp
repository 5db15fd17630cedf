#include "mixgap/serialize.hpp"

#include <cmath>
#include <string>

namespace mixgap {

namespace {

using nlohmann::json;

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_real(const std::optional<T>& v) {
  return v ? real(double(*v)) : json(nullptr);
}

json keyed(const std::map<std::size_t, double>& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[std::to_string(k)] = real(v);
  return out;
}

}  // namespace

json to_json(const SpectralReport& r) {
  return {{"gamma_star", optional_real(r.gamma_star)},
          {"gamma_ps", optional_real(r.gamma_ps)},
          {"gamma_dps", optional_real(r.gamma_dps)},
          {"k_ps", r.k_ps},
          {"k_dps", r.k_dps},
          {"k_explored", r.k_explored},
          {"gamma_dagger_at_k", keyed(r.gamma_dagger_at_k)},
          {"gamma_ddagger_at_k", keyed(r.gamma_ddagger_at_k)}};
}

json to_json(const SkippedTallies& t) {
  json transitions = json::array();
  for (const auto& tc : t.transitions()) transitions.push_back({tc.from, tc.to, tc.count});
  return {{"k", t.skip()},
          {"n", t.state_count()},
          {"m", t.trajectory_length()},
          {"pairs", t.pairs()},
          {"visits", std::vector<Count>(t.visits().begin(), t.visits().end())},
          {"transitions", std::move(transitions)}};
}

json to_json(const EstimateReport& r) {
  json unvisited = json::object();
  for (const auto& [k, states] : r.unvisited) unvisited[std::to_string(k)] = states;
  return {{"method", r.method},
          {"value", real(r.value)},
          {"K_used", r.K_used},
          {"K_star", r.K_star ? json(*r.K_star) : json(nullptr)},
          {"per_k_values", keyed(r.per_k_values)},
          {"unvisited", std::move(unvisited)},
          {"notes", r.notes}};
}

json to_json(const ConfidenceReport& r) {
  json terms = json::object();
  for (const auto& [k, t] : r.per_k_terms) {
    terms[std::to_string(k)] = {{"W", real(t.W)},
                                {"V", real(t.V)},
                                {"T", real(t.T)},
                                {"U", real(t.U)},
                                {"gamma_ps_p_hat", real(t.gamma_ps_p_hat)}};
  }
  return {{"point", real(r.point)},
          {"half_width", real(r.half_width)},
          {"interval", {real(r.lower), real(r.upper)}},
          {"vacuous", r.vacuous},
          {"per_k_terms", std::move(terms)},
          {"delta_hat", real(r.delta_hat)},
          {"K_hat", r.K_hat},
          {"alpha", real(r.alpha)},
          {"delta", real(r.delta)},
          {"c", real(r.c)},
          {"m", r.m}};
}

json to_json(const LemmaLedger& l) {
  json checks = json::array();
  for (const auto& c : l.checks) {
    checks.push_back({{"lemma", c.lemma},
                      {"params", c.params},
                      {"lhs", real(c.lhs)},
                      {"rhs", real(c.rhs)},
                      {"strict", c.strict},
                      {"passed", c.passed}});
  }
  return {{"checks", std::move(checks)}, {"violations", l.violations()}};
}

json to_json(const MixingSandwich& s) {
  return {{"t_mix", s.t_mix},
          {"ps_bounds", {real(s.ps_lower), real(s.ps_upper)}},
          {"dps_bounds", {real(s.dps_lower), real(s.dps_upper)}},
          {"reversible_bounds",
           s.rev_lower ? json{real(*s.rev_lower), real(*s.rev_upper)} : json(nullptr)},
          {"holds", s.holds()}};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real(v(i)));
  return out;
}

}  // namespace mixgap
