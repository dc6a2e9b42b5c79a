#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "hypsite/error.hpp"
#include "hypsite/generators.hpp"
#include "hypsite/matching.hpp"
#include "hypsite/percolation.hpp"
#include "hypsite/rng.hpp"

using namespace hypsite;

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Open flood fill from v, independent of the library's traversal.
std::set<VertexId> flood(const SiteConfig& cfg, const Adjacency& adj, VertexId v,
                         const std::vector<std::uint8_t>* removed = nullptr) {
  std::set<VertexId> seen;
  if (!cfg.is_open(v) || (removed && (*removed)[v])) return seen;
  std::vector<VertexId> stack{v};
  seen.insert(v);
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    adj.for_each_neighbor(x, [&](VertexId u) {
      if (cfg.is_open(u) && !(removed && (*removed)[u]) && seen.insert(u).second) stack.push_back(u);
    });
  }
  return seen;
}

std::uint64_t next_seed(std::uint64_t& s) { return s = mix64(s); }
double next_unit(std::uint64_t& s) { return unit_from_bits(next_seed(s)); }

}  // namespace

TEST_CASE("uniform field passes a Kolmogorov-Smirnov test") {
  const std::size_t n = 20000;
  for (std::uint64_t seed : {1ULL, 42ULL, 0xdeadbeefULL}) {
    UniformField f(seed, n);
    auto u = f.values();
    std::sort(u.begin(), u.end());
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d = std::max(d, std::abs(u[i] - static_cast<double>(i) / n));
      d = std::max(d, std::abs(static_cast<double>(i + 1) / n - u[i]));
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("inverted field is exactly 1 - U") {
  UniformField f(7, 5000);
  const UniformField g = f.inverse();
  for (VertexId v = 0; v < 5000; ++v) {
    CHECK(g(v) == 1.0 - f(v));
    CHECK(f(v) + g(v) == 1.0);
    CHECK(f(v) > 0.0);
    CHECK(f(v) < 1.0);
  }
  CHECK(g.inverse()(3) == f(3));
}

TEST_CASE("threshold realizes the standard coupling") {
  const RotationGraph g = tiling({3, 7, 5});
  std::uint64_t s = 99;
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t seed = next_seed(s);
    double p1 = next_unit(s), p2 = next_unit(s);
    if (p1 > p2) std::swap(p1, p2);
    const UniformField f(seed, g.size());
    const SiteConfig a = threshold(f, p1), b = threshold(f, p2);
    const ClusterLabeling la = clusters(a, g), lb = clusters(b, g);
    std::vector<std::uint32_t> image(la.cluster_count(), kNoCluster);
    for (VertexId v = 0; v < g.size(); ++v) {
      if (!a.is_open(v)) continue;
      REQUIRE(b.is_open(v));
      auto& img = image[la.label[v]];
      if (img == kNoCluster) img = lb.label[v];
      CHECK(img == lb.label[v]);
    }
  }
}

TEST_CASE("cluster labeling agrees with union-find") {
  const RotationGraph base = tiling({4, 5, 5});
  const MatchingGraph m(std::make_shared<const RotationGraph>(base));
  for (const Adjacency& adj : {Adjacency(m.base()), m.adjacency()}) {
    for (int state : {0, 1}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SiteConfig cfg = threshold(UniformField(seed, adj.size()), 0.45);
        const ClusterLabeling lab = clusters(cfg, adj, state);
        DisjointSets ds(adj.size());
        for (VertexId v = 0; v < adj.size(); ++v) {
          if (!cfg.has_state(v, state)) continue;
          adj.for_each_neighbor(v, [&](VertexId u) {
            if (cfg.has_state(u, state)) ds.unite(u, v);
          });
        }
        std::vector<std::uint32_t> expected(adj.size(), kNoCluster);
        std::vector<std::size_t> first_of;
        std::vector<std::uint32_t> root_id(adj.size(), kNoCluster);
        std::vector<std::uint32_t> sizes;
        std::vector<std::uint8_t> touches;
        for (VertexId v = 0; v < adj.size(); ++v) {
          if (!cfg.has_state(v, state)) continue;
          auto& id = root_id[ds.find(v)];
          if (id == kNoCluster) {
            id = static_cast<std::uint32_t>(sizes.size());
            sizes.push_back(0);
            touches.push_back(0);
          }
          expected[v] = id;
          ++sizes[id];
          touches[id] = touches[id] || adj.is_boundary(v);
        }
        CHECK(lab.label == expected);
        CHECK(lab.sizes == sizes);
        CHECK(lab.touches_boundary == touches);
        CHECK(lab.state == state);
        CHECK(lab.graph_kind == adj.kind());
      }
    }
  }
}

TEST_CASE("exploration matches flood fill and examines the lowest-id frontier vertex") {
  const RotationGraph g = tiling({3, 7, 5});
  std::uint64_t s = 5;
  int non_censored = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const SiteConfig cfg = threshold(UniformField(next_seed(s), g.size()), 0.15 + 0.2 * next_unit(s));
    const VertexId v = static_cast<VertexId>(next_seed(s) % g.size());
    const Exploration ex = explore(cfg, g, v);
    const auto c = flood(cfg, g, v);
    CHECK(std::set<VertexId>(ex.cluster.begin(), ex.cluster.end()) == c);
    std::set<VertexId> outer;
    for (VertexId x : c) {
      for (VertexId u : g.neighbors(x))
        if (!c.count(u)) outer.insert(u);
    }
    CHECK(std::set<VertexId>(ex.closed_boundary.begin(), ex.closed_boundary.end()) == outer);
    const bool touches = std::any_of(c.begin(), c.end(), [&](VertexId x) { return g.is_boundary(x); });
    CHECK(ex.censored == touches);
    non_censored += touches ? 0 : 1;

    std::set<VertexId> in_c, examined;
    if (cfg.is_open(v)) in_c.insert(v);
    for (const auto& step : ex.steps) {
      std::set<VertexId> candidates;
      for (VertexId x : in_c) {
        for (VertexId u : g.neighbors(x))
          if (!in_c.count(u) && !examined.count(u)) candidates.insert(u);
      }
      REQUIRE_FALSE(candidates.empty());
      CHECK(step.vertex == *candidates.begin());
      CHECK(step.open == cfg.is_open(step.vertex));
      examined.insert(step.vertex);
      if (step.open) in_c.insert(step.vertex);
    }
  }
  CHECK(non_censored > 0);
}

TEST_CASE("multi-cluster probe counts boundary-reaching clusters outside the ball") {
  const RotationGraph g = tiling({3, 7, 6});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SiteConfig cfg = threshold(UniformField(seed, g.size()), 0.55);
    const int N = 2;
    const auto d = bfs_distances(g, g.origin());
    std::vector<std::uint8_t> removed(g.size(), 0);
    for (VertexId v = 0; v < g.size(); ++v) removed[v] = d[v] >= 0 && d[v] <= N;
    std::set<std::set<VertexId>> found;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (d[v] != N + 1 || !cfg.is_open(v)) continue;
      auto c = flood(cfg, g, v, &removed);
      if (std::any_of(c.begin(), c.end(), [&](VertexId x) { return g.is_boundary(x); })) found.insert(c);
    }
    CHECK(multi_cluster_probe(cfg, g, g.origin(), N) == found.size());
  }
  const SiteConfig cfg = threshold(UniformField(1, g.size()), 0.5);
  CHECK_THROWS_AS(multi_cluster_probe(cfg, g, g.origin(), 5), TruncationError);
}

TEST_CASE("configuration dumps round-trip") {
  const SiteConfig cfg = threshold(UniformField(11, 300), 0.3);
  std::stringstream io;
  write_config(io, cfg);
  const SiteConfig back = read_config(io);
  CHECK(back.open == cfg.open);
  CHECK(back.p == cfg.p);
  CHECK(back.seed == cfg.seed);
  std::istringstream bad("# something-else\n0101\n");
  CHECK_THROWS_AS(read_config(bad), FormatError);
}
