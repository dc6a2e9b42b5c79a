#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hypsite/graph.hpp"

namespace hypsite {

// The matching graph G*: same vertices as the base graph, with u ~ v whenever
// u != v share a finite face. Base edges are always kept; the extra edges are
// exactly the non-adjacent co-facial pairs. Faces that touch the truncation
// boundary count as infinite and contribute nothing.
class MatchingGraph {
 public:
  explicit MatchingGraph(std::shared_ptr<const RotationGraph> base);
  // Rebuilds from a stored edge list (graph files); the list is validated
  // against the base graph's faces.
  MatchingGraph(std::shared_ptr<const RotationGraph> base,
                const std::vector<std::pair<VertexId, VertexId>>& added_edges);

  const RotationGraph& base() const { return *base_; }
  std::shared_ptr<const RotationGraph> base_ptr() const { return base_; }

  // Sorted (u < v) list of E* \ E.
  const std::vector<std::pair<VertexId, VertexId>>& added_edges() const { return added_; }

  Adjacency adjacency() const { return Adjacency(*base_, extra_offsets_, extra_neighbors_); }

  // Neighbors in G*: the base rotation followed by the added neighbors.
  std::vector<VertexId> star_neighbors(VertexId v) const;

 private:
  std::shared_ptr<const RotationGraph> base_;
  std::vector<std::pair<VertexId, VertexId>> added_;
  std::vector<std::uint64_t> extra_offsets_;
  std::vector<VertexId> extra_neighbors_;

  void index_added();
};

MatchingGraph matching_graph(std::shared_ptr<const RotationGraph> g);

// Shortest-path distance in G*; nullopt if unreachable.
std::optional<std::size_t> star_distance(const MatchingGraph& m, VertexId u, VertexId v);

}  // namespace hypsite
