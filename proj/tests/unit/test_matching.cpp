#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <set>

#include "hypsite/error.hpp"
#include "hypsite/generators.hpp"
#include "hypsite/matching.hpp"

using namespace hypsite;

namespace {

std::shared_ptr<const RotationGraph> shared(RotationGraph g) { return std::make_shared<const RotationGraph>(std::move(g)); }

// Co-facial pairs on finite faces, computed straight from the face list.
std::set<std::pair<VertexId, VertexId>> cofacial_non_edges(const RotationGraph& g) {
  std::set<std::pair<VertexId, VertexId>> out;
  for (const Face& f : trace_faces(g)) {
    if (!f.finite) continue;
    for (VertexId a : f.vertices) {
      for (VertexId b : f.vertices) {
        if (a < b && !g.adjacent(a, b)) out.insert({a, b});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("triangulations gain no matching edges") {
  const MatchingGraph m(shared(tiling({3, 7, 6})));
  CHECK(m.added_edges().empty());
  CHECK(m.adjacency().kind() == GraphKind::matching);
}

TEST_CASE("{4,5} gains exactly the two diagonals of every finite square") {
  auto g = shared(tiling({4, 5, 4}));
  const MatchingGraph m(g);
  std::size_t squares = 0;
  for (const Face& f : trace_faces(*g)) squares += f.finite ? 1 : 0;
  CHECK(m.added_edges().size() == 2 * squares);
  const auto oracle = cofacial_non_edges(*g);
  CHECK(std::set<std::pair<VertexId, VertexId>>(m.added_edges().begin(), m.added_edges().end()) == oracle);
  CHECK(std::is_sorted(m.added_edges().begin(), m.added_edges().end()));
}

TEST_CASE("matching graph of larger faces joins every co-facial pair") {
  auto g = shared(tiling({7, 3, 4}));
  const MatchingGraph m(g);
  const auto oracle = cofacial_non_edges(*g);
  CHECK(std::set<std::pair<VertexId, VertexId>>(m.added_edges().begin(), m.added_edges().end()) == oracle);
}

TEST_CASE("star neighbors are the base rotation followed by the added neighbors") {
  auto g = shared(tiling({4, 5, 3}));
  const MatchingGraph m(g);
  std::map<VertexId, std::set<VertexId>> extra;
  for (auto [u, v] : m.added_edges()) {
    extra[u].insert(v);
    extra[v].insert(u);
  }
  for (VertexId v = 0; v < g->size(); ++v) {
    const auto nb = m.star_neighbors(v);
    const auto base = g->neighbors(v);
    REQUIRE(nb.size() == base.size() + extra[v].size());
    CHECK(std::equal(base.begin(), base.end(), nb.begin()));
    CHECK(std::set<VertexId>(nb.begin() + base.size(), nb.end()) == extra[v]);
  }
}

TEST_CASE("star distance agrees with BFS over the star neighbor lists") {
  auto g = shared(tiling({4, 5, 4}));
  const MatchingGraph m(g);
  std::vector<int> d(g->size(), -1);
  std::queue<VertexId> q;
  d[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    for (VertexId u : m.star_neighbors(v)) {
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        q.push(u);
      }
    }
  }
  for (VertexId v = 0; v < g->size(); v += 7) {
    auto s = star_distance(m, 0, v);
    REQUIRE(s.has_value());
    CHECK(static_cast<int>(*s) == d[v]);
  }
}

TEST_CASE("stored added edges are validated against the faces") {
  auto g = shared(tiling({4, 5, 3}));
  const MatchingGraph m(g);
  CHECK(MatchingGraph(g, m.added_edges()).added_edges() == m.added_edges());
  auto bad = m.added_edges();
  bad.pop_back();
  CHECK_THROWS_AS(MatchingGraph(g, bad), StructuralError);
}
