#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypsite/report.hpp"

namespace hypsite {
namespace {

// JSON has no infinity; unreachable values are written as null.
nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string shortest(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

nlohmann::json to_json(const EstimateReport& r) {
  return {{"value", number(r.value)},     {"stderr", number(r.std_error)}, {"replicas", r.replicas},
          {"seed", r.seed},               {"degenerate", r.degenerate},    {"params", r.params}};
}

nlohmann::json to_json(const DecayResult& r) {
  nlohmann::json shells = nlohmann::json::array();
  for (std::size_t k = 0; k < r.distances.size(); ++k) {
    shells.push_back({{"distance", r.distances[k]},
                      {"shell_size", r.shell_sizes[k]},
                      {"estimate", to_json(r.shell[k])},
                      {"dropped", static_cast<bool>(r.dropped[k])}});
  }
  return {{"shells", shells},      {"slope", number(r.slope)}, {"intercept", number(r.intercept)},
          {"r_squared", number(r.r_squared)}, {"degenerate", r.degenerate}};
}

nlohmann::json to_json(const UniformProbeResult& r) {
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t k = 0; k < r.vertices.size(); ++k)
    per.push_back({{"vertex", r.vertices[k]}, {"estimate", to_json(r.per_vertex[k])}});
  return {{"per_vertex", per}, {"minimum", number(r.minimum)}};
}

nlohmann::json to_json(const IsoResult& r) {
  nlohmann::json ratio = nlohmann::json::array(), exact = nlohmann::json::array();
  for (double x : r.ratio) ratio.push_back(number(x));
  for (double x : r.exact_size_ratio) exact.push_back(number(x));
  return {{"ratio", ratio}, {"exact_size_ratio", exact}, {"witness", r.witness}, {"nodes", r.nodes}};
}

nlohmann::json to_json(const DualityReport& r) {
  return {{"p_c_star_hat", to_json(r.pc_star)}, {"p_u_hat", to_json(r.pu)},
          {"sum", number(r.sum)},               {"deviation", number(r.deviation)},
          {"sum_stderr", number(r.sum_std_error)}, {"params", r.params}};
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t k = 0; k < r.grid.size(); ++k) points.push_back({{"p", r.grid[k]}, {"estimate", to_json(r.points[k])}});
  return {{"observable", r.observable},
          {"monotone", r.monotone},
          {"monotone_violations", r.monotone_violations},
          {"points", points}};
}

nlohmann::json to_json(const EmbeddedTree& t) {
  nlohmann::json nodes = nlohmann::json::object(), paths = nlohmann::json::object();
  for (const auto& [label, v] : t.node_of) nodes[label.str()] = v;
  for (const auto& [label, walk] : t.paths) paths[label.str()] = walk;
  return {{"root", t.root},
          {"rule", t.rule == TurnRule::degree7 ? "deg7" : "deg5"},
          {"requested_depth", t.requested_depth},
          {"achieved_depth", t.achieved_depth},
          {"nodes", nodes},
          {"paths", paths},
          {"edges", t.tree_edges}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"checked", c.checked}, {"detail", c.detail}});
  return {{"all_passed", r.all_passed()}, {"checks", checks}};
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "# " << kSweepFormat << " observable=" << r.observable << " monotone_violations=" << r.monotone_violations
      << "\n";
  out << "p,value,stderr,replicas\n";
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    out << shortest(r.grid[k]) << "," << shortest(r.points[k].value) << "," << shortest(r.points[k].std_error) << ","
        << r.points[k].replicas << "\n";
  }
  return out.str();
}

}  // namespace hypsite
