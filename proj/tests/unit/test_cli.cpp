#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using hypsite::cli::run_cli;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hypsite_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("gen writes a graph and a manifest") {
  TempDir dir;
  const std::string g = dir / "g.json";
  REQUIRE(run({"gen", "--tiling", "3", "7", "--radius", "4", "--out", g}) == 0);
  const auto m = nlohmann::json::parse(slurp(g + ".manifest.json"));
  CHECK(m.at("format") == hypsite::cli::kManifestFormat);
  CHECK(m.at("command") == "gen");
  CHECK(m.at("outputs").at(0).at("sha256") == hypsite::cli::file_sha256(g));
  CHECK_FALSE(m.at("params").contains("threads"));
  CHECK(m.at("version") == "0.3.0");
}

TEST_CASE("sha256 of a known string") {
  TempDir dir;
  std::ofstream(dir / "abc") << "abc";
  CHECK(hypsite::cli::file_sha256(dir / "abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("exit codes follow the error category") {
  TempDir dir;
  const std::string sq = dir / "sq.json", tri = dir / "tri.json", x = dir / "x.json";
  REQUIRE(run({"gen", "--tiling", "4", "5", "--radius", "4", "--out", sq}) == 0);
  REQUIRE(run({"gen", "--tiling", "3", "7", "--radius", "3", "--out", tri}) == 0);
  CHECK(run({}) == hypsite::cli::kUsage);
  CHECK(run({"gen", "--bogus"}) == hypsite::cli::kUsage);
  CHECK(run({"gen", "--tiling", "3", "7", "--out", x}) == hypsite::cli::kUsage);
  CHECK(run({"estimate", "--graph", tri, "--observable", "nope", "--out", x}) == hypsite::cli::kUsage);
  CHECK(run({"estimate", "--graph", dir / "missing.json", "--observable", "theta", "--out", x}) ==
        hypsite::cli::kFormat);
  std::ofstream(dir / "junk.json") << "{ not a graph";
  CHECK(run({"match", "--graph", dir / "junk.json", "--out", x}) == hypsite::cli::kFormat);
  CHECK(run({"tree", "--graph", sq, "--mode", "deg7", "--depth", "2", "--out", x}) == hypsite::cli::kHypothesis);
  CHECK(run({"estimate", "--graph", tri, "--observable", "iso", "--max-size", "3", "--budget", "2", "--out", x}) ==
        hypsite::cli::kBudget);
  CHECK(run({"tree", "--graph", tri, "--depth", "6", "--out", x}) == hypsite::cli::kTruncation);
  CHECK(run({"tree", "--graph", tri, "--depth", "6", "--allow-partial", "--out", x}) == 0);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("replay reproduces outputs and notices changed inputs") {
  TempDir dir;
  const std::string g = dir / "g.json", out = dir / "theta.json";
  REQUIRE(run({"gen", "--tiling", "3", "7", "--radius", "5", "--out", g}) == 0);
  REQUIRE(run({"estimate", "--graph", g, "--observable", "theta", "--p", "0.4", "--n", "3", "--replicas", "200",
               "--out", out}) == 0);
  CHECK(run({"replay", "--manifest", out + ".manifest.json"}) == 0);
  CHECK_FALSE(fs::exists(out + ".replay"));
  CHECK(run({"replay", "--manifest", out + ".manifest.json", "--keep"}) == 0);
  CHECK(slurp(out + ".replay") == slurp(out));
  REQUIRE(run({"gen", "--tiling", "3", "8", "--radius", "5", "--out", g}) == 0);
  CHECK(run({"replay", "--manifest", out + ".manifest.json"}) == hypsite::cli::kOther);
  std::ofstream(dir / "bad.manifest.json") << R"({"format":"other"})";
  CHECK(run({"replay", "--manifest", dir / "bad.manifest.json"}) == hypsite::cli::kFormat);
}

TEST_CASE("thread count does not change result files") {
  TempDir dir;
  const std::string g = dir / "g.json";
  REQUIRE(run({"gen", "--tiling", "3", "7", "--radius", "6", "--out", g}) == 0);
  for (const std::string obs : {"pc", "uniqueness"}) {
    std::vector<std::string> base{"estimate", "--graph", g, "--observable", obs, "--n", "4",
                                  "--r-inner", "2", "--r-outer", "5", "--replicas", "300"};
    auto one = base, many = base;
    one.insert(one.end(), {"--threads", "1", "--out", dir / (obs + "1.json")});
    many.insert(many.end(), {"--threads", "8", "--out", dir / (obs + "8.json")});
    REQUIRE(run(one) == 0);
    REQUIRE(run(many) == 0);
    CHECK(slurp(dir / (obs + "1.json")) == slurp(dir / (obs + "8.json")));
  }
}

TEST_CASE("sweep writes the csv with its header") {
  TempDir dir;
  const std::string g = dir / "g.json", csv = dir / "s.csv";
  REQUIRE(run({"gen", "--tree", "2", "--depth", "8", "--out", g}) == 0);
  REQUIRE(run({"sweep", "--graph", g, "--observable", "theta", "--n", "6", "--grid", "0.2:0.6:0.2", "--replicas",
               "100", "--out", csv}) == 0);
  std::istringstream in(slurp(csv));
  std::string header, columns;
  std::getline(in, header);
  std::getline(in, columns);
  CHECK(header.rfind("# hypsite-sweep/1 observable=theta", 0) == 0);
  CHECK(columns == "p,value,stderr,replicas");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 3);
  CHECK(run({"sweep", "--graph", g, "--observable", "theta", "--grid", "0.5:0.1:0.1", "--out", csv}) ==
        hypsite::cli::kUsage);
}
