#include "cli.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypsite/error.hpp"
#include "hypsite/estimators.hpp"
#include "hypsite/generators.hpp"
#include "hypsite/graph_io.hpp"
#include "hypsite/matching.hpp"
#include "hypsite/parallel.hpp"
#include "hypsite/percolation.hpp"
#include "hypsite/report.hpp"
#include "hypsite/tree_embed.hpp"

#ifndef HYPSITE_VERSION
#define HYPSITE_VERSION "unknown"
#endif

namespace hypsite::cli {
namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  std::size_t replicas = 1000;
  unsigned threads = 1;
  std::string out;

  RunOptions run(bool inverted = false) const { return RunOptions{replicas, seed, threads, inverted}; }
};

void add_common(CLI::App* cmd, Common& c, bool needs_out = true) {
  cmd->add_option("--seed", c.seed, "Base seed of all replicas")->capture_default_str();
  cmd->add_option("--replicas", c.replicas, "Number of Monte Carlo replicas")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads; results do not depend on it")->capture_default_str();
  auto* out = cmd->add_option("--out", c.out, "Output file");
  if (needs_out) out->required();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json digest_list(const std::vector<std::string>& paths) {
  json out = json::array();
  for (const auto& p : paths) out.push_back({{"path", p}, {"sha256", file_sha256(p)}});
  return out;
}

void write_manifest(const std::string& command, const std::vector<std::string>& args, const json& params,
                    const Common& c, const std::vector<std::string>& inputs) {
  json m = {{"format", kManifestFormat},
            {"command", command},
            {"argv", args},
            {"params", params},
            {"seed", c.seed},
            {"version", HYPSITE_VERSION},
            {"inputs", digest_list(inputs)},
            {"outputs", digest_list({c.out})}};
  write_file(c.out + ".manifest.json", dump(m));
}

json result_document(const std::string& command, const json& params, json result) {
  return {{"format", kResultFormat}, {"command", command}, {"params", params}, {"result", std::move(result)}};
}

std::shared_ptr<const RotationGraph> load_base(const std::string& path, GraphDocument* keep = nullptr) {
  GraphDocument doc = load_graph(path);
  auto g = std::make_shared<const RotationGraph>(std::move(doc.graph));
  if (keep) {
    keep->added_edges = std::move(doc.added_edges);
    keep->has_added_edges = doc.has_added_edges;
  }
  return g;
}

MatchingGraph load_matching(const std::string& path) {
  GraphDocument doc;
  auto g = load_base(path, &doc);
  return doc.has_added_edges ? MatchingGraph(g, doc.added_edges) : MatchingGraph(g);
}

std::vector<double> parse_grid(const std::string& text) {
  std::array<double, 3> v{};
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw DomainError("grid must look like start:stop:step");
  if (!(v[2] > 0) || v[1] < v[0]) throw DomainError("grid needs start <= stop and a positive step");
  const auto steps = static_cast<long>(std::floor((v[1] - v[0]) / v[2] + 1e-9));
  std::vector<double> grid;
  for (long k = 0; k <= steps; ++k) grid.push_back(v[0] + static_cast<double>(k) * v[2]);
  return grid;
}

// ----- gen -----

struct GenArgs {
  std::vector<int> tiling, half;
  int tree = 0;
  bool square = false, augment = false;
  int radius = -1, depth = -1;
};

int cmd_gen(const GenArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const int families = !a.tiling.empty() + !a.half.empty() + (a.tree > 0) + a.square;
  if (families != 1) throw DomainError("gen needs exactly one of --tiling, --half-plane, --tree, --square");
  json params;
  RotationGraph g;
  auto need = [](int v, const char* flag) {
    if (v < 0) throw DomainError(std::string("gen needs ") + flag);
    return v;
  };
  if (!a.tiling.empty()) {
    g = tiling({a.tiling[0], a.tiling[1], need(a.radius, "--radius")});
    params = {{"family", "tiling"}, {"p", a.tiling[0]}, {"q", a.tiling[1]}, {"radius", a.radius}};
  } else if (!a.half.empty()) {
    g = half_plane({a.half[0], a.half[1], need(a.radius, "--radius")});
    params = {{"family", "half-plane"}, {"p", a.half[0]}, {"q", a.half[1]}, {"radius", a.radius}};
    if (a.augment) g = barycentric_augment(g, g.meta().at("cut_path").get<std::vector<VertexId>>());
    params["augment"] = a.augment;
  } else if (a.tree > 0) {
    g = tree_Tn(a.tree, need(a.depth, "--depth"));
    params = {{"family", "tree"}, {"n", a.tree}, {"depth", a.depth}};
  } else {
    g = square_lattice(need(a.radius, "--radius"));
    params = {{"family", "square"}, {"radius", a.radius}};
  }
  if (a.augment && a.half.empty()) throw DomainError("--augment applies to --half-plane only");
  save_graph(c.out, g);
  write_manifest("gen", args, params, c, {});
  out << "wrote " << c.out << ": " << g.size() << " vertices, " << g.edge_count() << " edges\n";
  return kOk;
}

// ----- match -----

int cmd_match(const std::string& graph, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  auto g = load_base(graph);
  MatchingGraph m(g);
  RotationGraph tagged = *g;
  json meta = tagged.meta();
  meta["kind"] = "matching";
  tagged.set_meta(meta);
  save_graph(c.out, tagged, &m.added_edges());
  write_manifest("match", args, {{"graph", graph}}, c, {graph});
  out << "wrote " << c.out << ": " << m.added_edges().size() << " added edges\n";
  return kOk;
}

// ----- tree -----

struct TreeArgs {
  std::string graph, mode = "deg7";
  int depth = 4;
  std::optional<VertexId> root;
  bool allow_partial = false;
};

int cmd_tree(const TreeArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  auto g = load_base(a.graph);
  if (a.mode != "deg7" && a.mode != "deg5") throw DomainError("--mode must be deg7 or deg5");
  const TurnRule rule = a.mode == "deg7" ? TurnRule::degree7 : TurnRule::degree5;
  const VertexId root = a.root.value_or(g->origin());
  const EmbeddedTree t = embed_tree(*g, root, a.depth, rule, a.allow_partial);
  const VerificationReport report = verify_embedding(t);
  const json params = {{"graph", a.graph}, {"mode", a.mode}, {"depth", a.depth}, {"root", root},
                       {"allow_partial", a.allow_partial}};
  write_file(c.out, dump(result_document("tree", params, {{"tree", to_json(t)}, {"verification", to_json(report)}})));
  write_manifest("tree", args, params, c, {a.graph});
  out << "tree depth " << t.achieved_depth << "/" << a.depth << ", " << t.node_of.size() << " nodes, verification "
      << (report.all_passed() ? "all-pass" : "FAILED") << "\n";
  for (const auto& check : report.checks)
    if (!check.passed) out << "  " << check.name << ": " << check.detail << "\n";
  return kOk;
}

// ----- estimate / sweep / duality -----

struct EstimateArgs {
  std::string graph, observable;
  std::optional<VertexId> vertex;
  double p = 0.5;
  int n = 8, m = 0, N = 2, r_inner = 4, r_outer = 9, state = 1, max_size = 14;
  double level = 0.5, tol = 1e-4, epsilon = 0.02, p_min = 0.0, p_max = 1.0, grid_step = 0.01;
  double i_lower = 1.0, M = 1.0;
  std::size_t bootstrap = 200, pc_replicas = 0;
  std::uint64_t budget = 2'000'000'000ULL;
  std::string radii = "1,2,3,4,5", sample, grid;
  bool star = false, inverted = false;
};

std::vector<VertexId> parse_ids(const std::string& text) {
  std::vector<VertexId> ids;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ids.push_back(static_cast<VertexId>(v));
    } catch (const std::exception&) {
      throw DomainError("expected a comma-separated list of nonnegative integers, got '" + text + "'");
    }
  }
  return ids;
}

json estimate_params(const EstimateArgs& a, const Common& c, const std::vector<std::string>& keys) {
  const json all = {{"graph", a.graph},       {"observable", a.observable}, {"p", a.p},
                    {"n", a.n},               {"m", a.m},                   {"N", a.N},
                    {"r_inner", a.r_inner},   {"r_outer", a.r_outer},       {"state", a.state},
                    {"max_size", a.max_size}, {"level", a.level},           {"tol", a.tol},
                    {"epsilon", a.epsilon},   {"p_min", a.p_min},           {"p_max", a.p_max},
                    {"grid_step", a.grid_step}, {"i_lower", a.i_lower},     {"M", a.M},
                    {"bootstrap", a.bootstrap}, {"pc_replicas", a.pc_replicas}, {"budget", a.budget},
                    {"radii", a.radii},       {"sample", a.sample},         {"grid", a.grid},
                    {"star", a.star},         {"inverted", a.inverted}};
  json p = {{"seed", c.seed}, {"replicas", c.replicas}};
  for (const auto& k : keys) p[k] = all.at(k);
  if (a.vertex) p["vertex"] = *a.vertex;
  return p;
}

int cmd_estimate(const EstimateArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const std::string& obs = a.observable;
  json params, result;
  std::vector<std::string> inputs;
  if (obs == "hoeffding") {
    params = estimate_params(a, c, {"observable", "p", "i_lower", "M"});
    result = {{"bound", hoeffding_bound(a.p, a.i_lower, a.M)}};
  } else {
    if (a.graph.empty()) throw DomainError("--graph is required for observable " + obs);
    inputs.push_back(a.graph);
    const MatchingGraph m = load_matching(a.graph);
    const RotationGraph& g = m.base();
    const VertexId v = a.vertex.value_or(g.origin());
    const RunOptions run = c.run(a.inverted);
    if (obs == "theta") {
      params = estimate_params(a, c, {"graph", "observable", "p", "n", "inverted"});
      result = to_json(theta_n(g, v, a.p, a.n, run));
    } else if (obs == "pc") {
      params = estimate_params(a, c, {"graph", "observable", "n", "m", "level", "tol", "bootstrap", "star", "inverted"});
      PcOptions pc{a.n, a.m, a.level, a.tol, a.bootstrap};
      result = a.star ? to_json(estimate_pc(m.adjacency(), v, pc, run)) : to_json(estimate_pc(g, v, pc, run));
    } else if (obs == "decay") {
      params = estimate_params(a, c, {"graph", "observable", "p", "radii", "inverted"});
      std::vector<int> radii;
      for (VertexId r : parse_ids(a.radii)) radii.push_back(static_cast<int>(r));
      result = to_json(two_point_decay(m, a.p, v, radii, run));
    } else if (obs == "uniform") {
      params = estimate_params(a, c, {"graph", "observable", "p", "N", "sample", "inverted"});
      auto sample = a.sample.empty() ? std::vector<VertexId>{v} : parse_ids(a.sample);
      result = to_json(uniform_perc_probe(g, a.p, a.N, sample, run));
    } else if (obs == "uniqueness") {
      params = estimate_params(a, c, {"graph", "observable", "p", "r_inner", "r_outer", "state", "inverted"});
      result = to_json(uniqueness_probe(g, a.p, {v, a.r_inner, a.r_outer, a.state}, run));
    } else if (obs == "pu") {
      params = estimate_params(a, c, {"graph", "observable", "r_inner", "r_outer", "epsilon", "tol", "p_min", "p_max",
                                      "grid_step", "bootstrap", "inverted"});
      PuOptions pu{{v, a.r_inner, a.r_outer, 1}, a.epsilon, a.tol, a.p_min, a.p_max, a.grid_step, a.bootstrap};
      result = to_json(estimate_pu(g, pu, run));
    } else if (obs == "iso") {
      params = estimate_params(a, c, {"graph", "observable", "max_size", "budget"});
      result = to_json(iso_upper(g, v, a.max_size, a.budget));
    } else if (obs == "multi_cluster") {
      params = estimate_params(a, c, {"graph", "observable", "p", "N", "inverted"});
      std::vector<double> counts(c.replicas), hits(c.replicas);
      parallel_for(c.replicas, c.threads, [&](std::size_t r) {
        const UniformField f(replica_seed(c.seed, r), g.size(), a.inverted);
        counts[r] = static_cast<double>(multi_cluster_probe(threshold(f, a.p), g, v, a.N));
        hits[r] = counts[r] >= 2 ? 1.0 : 0.0;
      });
      result = {{"at_least_two", to_json(summarize(hits, c.seed))}, {"count", to_json(summarize(counts, c.seed))}};
    } else {
      throw DomainError("unknown observable '" + obs + "'");
    }
  }
  write_file(c.out, dump(result_document("estimate", params, result)));
  write_manifest("estimate", args, params, c, inputs);
  out << "wrote " << c.out << "\n";
  return kOk;
}

int cmd_sweep(const EstimateArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  if (a.grid.empty()) throw DomainError("sweep needs --grid start:stop:step");
  const std::vector<double> grid = parse_grid(a.grid);
  auto g = load_base(a.graph);
  const VertexId v = a.vertex.value_or(g->origin());
  const RunOptions run = c.run(a.inverted);
  SweepResult sweep;
  json params;
  if (a.observable == "theta") {
    params = estimate_params(a, c, {"graph", "observable", "n", "grid", "inverted"});
    sweep = sweep_thresholds("theta", connection_thresholds(*g, v, a.n, run), grid, c.seed);
  } else if (a.observable == "uniform") {
    params = estimate_params(a, c, {"graph", "observable", "N", "grid", "inverted"});
    sweep = sweep_thresholds("uniform", ball_boundary_thresholds(*g, v, a.N, run), grid, c.seed);
  } else if (a.observable == "uniqueness") {
    params = estimate_params(a, c, {"graph", "observable", "r_inner", "r_outer", "grid", "inverted"});
    sweep = sweep_multi_arm(multi_arm_sweep(*g, {v, a.r_inner, a.r_outer, 1}, run), grid);
  } else {
    throw DomainError("sweep supports the observables theta, uniform and uniqueness");
  }
  write_file(c.out, sweep_csv(sweep));
  write_manifest("sweep", args, params, c, {a.graph});
  out << "wrote " << c.out << ": " << grid.size() << " grid points, " << sweep.monotone_violations
      << " monotone violations\n";
  return kOk;
}

int cmd_duality(const EstimateArgs& a, const Common& c, const std::vector<std::string>& args, std::ostream& out) {
  const MatchingGraph m = load_matching(a.graph);
  DualityOptions d;
  d.pc = PcOptions{a.n, a.m, a.level, a.tol, a.bootstrap};
  d.pu = PuOptions{{m.base().origin(), a.r_inner, a.r_outer, 1}, a.epsilon, a.tol, a.p_min, a.p_max, a.grid_step,
                   a.bootstrap};
  d.pc_replicas = a.pc_replicas;
  const json params = estimate_params(a, c, {"graph", "n", "m", "level", "tol", "bootstrap", "r_inner", "r_outer",
                                             "epsilon", "p_min", "p_max", "grid_step", "pc_replicas"});
  const DualityReport r = duality_check(m, d, c.run());
  write_file(c.out, dump(result_document("duality", params, to_json(r))));
  write_manifest("duality", args, params, c, {a.graph});
  out << "p_c(G*) ~ " << r.pc_star.value << ", p_u(G) ~ " << r.pu.value << ", sum " << r.sum << "\n";
  return kOk;
}

// ----- replay -----

int cmd_replay(const std::string& manifest_path, bool keep, std::ostream& out, std::ostream& err) {
  json m;
  try {
    std::ifstream in(manifest_path);
    if (!in) throw FormatError("cannot open manifest '" + manifest_path + "'");
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
  if (m.value("format", "") != kManifestFormat) throw FormatError("not a " + std::string(kManifestFormat) + " file");
  for (const auto& input : m.at("inputs")) {
    if (file_sha256(input.at("path")) != input.at("sha256")) {
      err << "input " << input.at("path").get<std::string>() << " changed since the manifest was written\n";
      return kOther;
    }
  }
  auto args = m.at("argv").get<std::vector<std::string>>();
  std::string original;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" && i + 1 < args.size()) {
      original = args[i + 1];
      args[i + 1] = original + ".replay";
    } else if (args[i].rfind("--out=", 0) == 0) {
      original = args[i].substr(6);
      args[i] = "--out=" + original + ".replay";
    }
  }
  if (original.empty()) throw FormatError("manifest argv has no --out");
  std::ostringstream sink;
  const int code = run_cli(args, sink, err);
  if (code != kOk) return code;
  const std::string replayed = original + ".replay";
  bool same = true;
  for (const auto& output : m.at("outputs")) {
    const std::string path = output.at("path");
    const std::string now = file_sha256(path == original ? replayed : path);
    const bool match = now == output.at("sha256");
    out << (match ? "identical " : "DIFFERS   ") << path << "\n";
    same = same && match;
  }
  if (!keep) {
    std::filesystem::remove(replayed);
    std::filesystem::remove(replayed + ".manifest.json");
  }
  return same ? kOk : kOther;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::format: return kFormat;
    case ErrorKind::domain: return kUsage;
    case ErrorKind::hypothesis: return kHypothesis;
    case ErrorKind::budget: return kBudget;
    case ErrorKind::truncation: return kTruncation;
    case ErrorKind::structural: return kOther;
  }
  return kOther;
}

void add_estimator_options(CLI::App* cmd, EstimateArgs& a) {
  cmd->add_option("--vertex,--center,--root", a.vertex, "Vertex the estimator is centered on (default: origin)");
  cmd->add_option("--p", a.p, "Site probability")->capture_default_str();
  cmd->add_option("--n", a.n, "Sphere radius for theta_n and p_c")->capture_default_str();
  cmd->add_option("--m", a.m, "Inner radius of the theta ratio (0: n/2)")->capture_default_str();
  cmd->add_option("--N", a.N, "Ball radius for the uniform and multi-cluster probes")->capture_default_str();
  cmd->add_option("--r-inner", a.r_inner, "Inner sphere of the multi-arm annulus")->capture_default_str();
  cmd->add_option("--r-outer", a.r_outer, "Outer sphere of the multi-arm annulus")->capture_default_str();
  cmd->add_option("--state", a.state, "Cluster state counted by the multi-arm probe")->capture_default_str();
  cmd->add_option("--level", a.level, "Crossing level of the theta ratio")->capture_default_str();
  cmd->add_option("--tol", a.tol, "Bisection tolerance")->capture_default_str();
  cmd->add_option("--epsilon", a.epsilon, "Multi-arm level defining p_u")->capture_default_str();
  cmd->add_option("--p-min", a.p_min, "Lower end of the p_u scan")->capture_default_str();
  cmd->add_option("--p-max", a.p_max, "Upper end of the p_u scan")->capture_default_str();
  cmd->add_option("--grid-step", a.grid_step, "Step of the p_u scan")->capture_default_str();
  cmd->add_option("--bootstrap", a.bootstrap, "Bootstrap resamples for threshold errors")->capture_default_str();
  cmd->add_option("--pc-replicas", a.pc_replicas, "Replicas for the p_c side of duality (0: --replicas)");
  cmd->add_flag("--inverted", a.inverted, "Sample with U replaced by 1 - U");
}

}  // namespace

std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 unavailable");
  std::vector<char> buf(1 << 20);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Site percolation on planar hyperbolic graphs", "hypsite"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HYPSITE_VERSION);

  Common common;
  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  gen->add_option("--tiling", gen_args.tiling, "Regular {p,q} tiling")->expected(2);
  gen->add_option("--half-plane", gen_args.half, "Half of a {p,q} tiling, q even")->expected(2);
  gen->add_option("--tree", gen_args.tree, "Tree T_{n+1} with root degree n");
  gen->add_flag("--square", gen_args.square, "Square lattice");
  gen->add_option("--radius", gen_args.radius, "Truncation radius");
  gen->add_option("--depth", gen_args.depth, "Tree depth");
  gen->add_flag("--augment", gen_args.augment, "Add a center vertex to every face off the cut path");
  add_common(gen, common);

  std::string match_graph;
  auto* match = app.add_subcommand("match", "Build the matching graph");
  match->add_option("--graph", match_graph, "Input graph file")->required();
  add_common(match, common);

  TreeArgs tree_args;
  auto* tree = app.add_subcommand("tree", "Embed and verify the branching tree");
  tree->add_option("--graph", tree_args.graph, "Host graph file")->required();
  tree->add_option("--mode", tree_args.mode, "deg7 or deg5")->capture_default_str();
  tree->add_option("--depth", tree_args.depth, "Requested depth")->capture_default_str();
  tree->add_option("--root", tree_args.root, "Root vertex (default: origin)");
  tree->add_flag("--allow-partial", tree_args.allow_partial, "Keep a tree cut short by the truncation");
  add_common(tree, common);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Run one estimator");
  estimate->add_option("--graph", est.graph, "Input graph file");
  estimate->add_option("--observable", est.observable,
                       "theta | pc | decay | uniform | uniqueness | pu | iso | multi_cluster | hoeffding")
      ->required();
  add_estimator_options(estimate, est);
  estimate->add_option("--radii", est.radii, "Star distances for decay, comma separated")->capture_default_str();
  estimate->add_option("--sample", est.sample, "Vertices for the uniform probe, comma separated");
  estimate->add_option("--max-size", est.max_size, "Largest set size for iso")->capture_default_str();
  estimate->add_option("--budget", est.budget, "Search node budget for iso")->capture_default_str();
  estimate->add_option("--i-lower", est.i_lower, "Isoperimetric lower bound for hoeffding")->capture_default_str();
  estimate->add_option("--M", est.M, "Exploration length for hoeffding")->capture_default_str();
  estimate->add_flag("--star", est.star, "Estimate p_c on the matching graph");
  add_common(estimate, common);

  EstimateArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Evaluate an observable over a p grid on shared fields");
  sweep->add_option("--graph", sw.graph, "Input graph file")->required();
  sweep->add_option("--observable", sw.observable, "theta | uniform | uniqueness")->required();
  sweep->add_option("--grid", sw.grid, "start:stop:step")->required();
  add_estimator_options(sweep, sw);
  add_common(sweep, common);

  EstimateArgs du;
  auto* duality = app.add_subcommand("duality", "p_c of the matching graph plus p_u of the graph");
  duality->add_option("--graph", du.graph, "Input graph file")->required();
  add_estimator_options(duality, du);
  add_common(duality, common);

  std::string manifest;
  bool keep = false;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  replay->add_option("--manifest", manifest, "Manifest file")->required();
  replay->add_flag("--keep", keep, "Keep the replayed outputs");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_args, common, args, out);
    if (*match) return cmd_match(match_graph, common, args, out);
    if (*tree) return cmd_tree(tree_args, common, args, out);
    if (*estimate) return cmd_estimate(est, common, args, out);
    if (*sweep) return cmd_sweep(sw, common, args, out);
    if (*duality) return cmd_duality(du, common, args, out);
    if (*replay) return cmd_replay(manifest, keep, out, err);
  } catch (const Error& e) {
    err << "hypsite: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "hypsite: " << e.what() << "\n";
    return kOther;
  }
  return kUsage;
}

}  // namespace hypsite::cli
