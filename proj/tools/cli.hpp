#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypsite::cli {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kUsage = 2,
  kFormat = 3,
  kHypothesis = 4,
  kBudget = 5,
  kTruncation = 6,
};

inline constexpr const char* kManifestFormat = "hypsite-manifest/1";

// Runs one command line (without the program name). Every command that
// writes --out also writes <out>.manifest.json recording the argument list,
// parameters, seed, tool version and SHA-256 digests of inputs and outputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of a file's contents.
std::string file_sha256(const std::string& path);

}  // namespace hypsite::cli
