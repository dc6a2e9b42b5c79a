#pragma once

#include <string>

#include <json.hpp>

#include "hypsite/estimators.hpp"
#include "hypsite/tree_embed.hpp"

namespace hypsite {

inline constexpr const char* kResultFormat = "hypsite-result/1";
inline constexpr const char* kSweepFormat = "hypsite-sweep/1";

nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const DecayResult& r);
nlohmann::json to_json(const UniformProbeResult& r);
nlohmann::json to_json(const IsoResult& r);
nlohmann::json to_json(const DualityReport& r);
nlohmann::json to_json(const SweepResult& r);

// {"root", "rule", "requested_depth", "achieved_depth", "nodes": {label: v},
//  "paths": {label: [v...]}, "edges": [[parent, child]...]}; labels use 'h'
// for the 1/2 symbol and the root is the empty label.
nlohmann::json to_json(const EmbeddedTree& t);
nlohmann::json to_json(const VerificationReport& r);

// CSV with a "# hypsite-sweep/1 observable=<name> ..." header line, then the
// columns p,value,stderr,replicas.
std::string sweep_csv(const SweepResult& r);

}  // namespace hypsite
