#include "hypsite/matching.hpp"

#include <algorithm>

#include "hypsite/error.hpp"

namespace hypsite {
namespace {

std::vector<std::pair<VertexId, VertexId>> cofacial_pairs(const RotationGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for_each_face(g, [&](std::span<const VertexId> walk, bool finite) {
    if (!finite || walk.size() <= 3) return;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      for (std::size_t j = i + 1; j < walk.size(); ++j) {
        VertexId a = walk[i], b = walk[j];
        if (a == b || g.adjacent(a, b)) continue;
        pairs.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
  });
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

MatchingGraph::MatchingGraph(std::shared_ptr<const RotationGraph> base) : base_(std::move(base)) {
  if (!base_) throw DomainError("matching graph needs a base graph");
  added_ = cofacial_pairs(*base_);
  index_added();
}

MatchingGraph::MatchingGraph(std::shared_ptr<const RotationGraph> base,
                             const std::vector<std::pair<VertexId, VertexId>>& added_edges)
    : MatchingGraph(std::move(base)) {
  std::vector<std::pair<VertexId, VertexId>> given;
  given.reserve(added_edges.size());
  for (auto [u, v] : added_edges) given.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(given.begin(), given.end());
  if (given != added_) throw StructuralError("stored matching edges disagree with the base graph's faces");
}

void MatchingGraph::index_added() {
  const std::size_t n = base_->size();
  extra_offsets_.assign(n + 1, 0);
  if (added_.empty()) {
    // An all-zero offset table still marks this adjacency as the matching graph.
    extra_neighbors_.clear();
    return;
  }
  for (auto [u, v] : added_) {
    ++extra_offsets_[u + 1];
    ++extra_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) extra_offsets_[i + 1] += extra_offsets_[i];
  extra_neighbors_.assign(extra_offsets_[n], kNoVertex);
  std::vector<std::uint64_t> fill(extra_offsets_.begin(), extra_offsets_.end() - 1);
  for (auto [u, v] : added_) {
    extra_neighbors_[fill[u]++] = v;
    extra_neighbors_[fill[v]++] = u;
  }
}

std::vector<VertexId> MatchingGraph::star_neighbors(VertexId v) const {
  std::vector<VertexId> out;
  adjacency().for_each_neighbor(v, [&](VertexId u) { out.push_back(u); });
  return out;
}

MatchingGraph matching_graph(std::shared_ptr<const RotationGraph> g) { return MatchingGraph(std::move(g)); }

std::optional<std::size_t> star_distance(const MatchingGraph& m, VertexId u, VertexId v) {
  return distance(m.adjacency(), u, v);
}

}  // namespace hypsite
