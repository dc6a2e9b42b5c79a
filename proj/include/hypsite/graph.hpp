#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hypsite {

using VertexId = std::uint32_t;
using HalfEdgeId = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

// A finite planar graph stored as a rotation system: for every vertex the
// counterclockwise cyclic order of its neighbors. Vertices flagged as boundary
// sit on the truncation of an infinite graph; their rotation lists are the
// neighbors that exist inside the truncation, still in counterclockwise order.
//
// Storage is CSR. The half-edge (v -> u) is identified with its slot in the
// flat neighbor array, so half-edge ids are contiguous in 0..2|E|-1.
class RotationGraph {
 public:
  RotationGraph() = default;

  // Validates symmetry, simplicity and connectivity; throws StructuralError.
  RotationGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors,
                std::vector<std::uint8_t> boundary, nlohmann::json meta = nlohmann::json::object());

  static RotationGraph from_lists(const std::vector<std::vector<VertexId>>& rotation,
                                  const std::vector<VertexId>& boundary_ids,
                                  nlohmann::json meta = nlohmann::json::object());

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t half_edge_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool is_boundary(VertexId v) const { return boundary_[v] != 0; }
  bool contains(VertexId v) const { return v < size(); }

  // Index of u inside the rotation of v, if adjacent.
  std::optional<std::size_t> position(VertexId v, VertexId u) const;
  bool adjacent(VertexId u, VertexId v) const { return position(u, v).has_value(); }

  // The neighbor reached from u by `steps` counterclockwise positions around v.
  // Throws StructuralError if u is not a neighbor of v.
  VertexId rotate(VertexId v, VertexId u, std::ptrdiff_t steps) const;
  VertexId next_ccw(VertexId v, VertexId u) const { return rotate(v, u, 1); }
  VertexId prev_ccw(VertexId v, VertexId u) const { return rotate(v, u, -1); }

  HalfEdgeId half_edge(VertexId v, std::size_t slot) const { return offsets_[v] + slot; }
  VertexId half_edge_head(HalfEdgeId h) const { return neighbors_[h]; }

  const nlohmann::json& meta() const { return meta_; }
  void set_meta(nlohmann::json meta) { meta_ = std::move(meta); }

  // meta["origin"] when present, else vertex 0.
  VertexId origin() const;

  std::vector<VertexId> boundary_vertices() const;
  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const VertexId> flat_neighbors() const { return neighbors_; }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<std::uint8_t> boundary_;
  nlohmann::json meta_ = nlohmann::json::object();
};

// Throws StructuralError describing the first violated invariant.
void validate(const RotationGraph& g);

enum class GraphKind { base, matching };

// Read-only adjacency over which distances and clusters are computed: the base
// rotation graph, optionally extended by an extra edge set (the matching graph).
class Adjacency {
 public:
  Adjacency(const RotationGraph& g) : base_(&g) {}  // NOLINT: implicit by intent
  Adjacency(const RotationGraph& g, std::span<const std::uint64_t> extra_offsets,
            std::span<const VertexId> extra_neighbors)
      : base_(&g), extra_offsets_(extra_offsets), extra_neighbors_(extra_neighbors) {}

  const RotationGraph& base() const { return *base_; }
  GraphKind kind() const { return extra_offsets_.empty() ? GraphKind::base : GraphKind::matching; }
  std::size_t size() const { return base_->size(); }
  bool is_boundary(VertexId v) const { return base_->is_boundary(v); }

  template <class F>
  void for_each_neighbor(VertexId v, F&& f) const {
    for (VertexId u : base_->neighbors(v)) f(u);
    if (!extra_offsets_.empty()) {
      for (auto i = extra_offsets_[v]; i < extra_offsets_[v + 1]; ++i) f(extra_neighbors_[i]);
    }
  }

  std::size_t degree(VertexId v) const {
    std::size_t d = base_->degree(v);
    if (!extra_offsets_.empty()) d += extra_offsets_[v + 1] - extra_offsets_[v];
    return d;
  }

 private:
  const RotationGraph* base_;
  std::span<const std::uint64_t> extra_offsets_;
  std::span<const VertexId> extra_neighbors_;
};

struct Face {
  // Boundary walk with the face on the left: vertices[i] -> vertices[i+1 mod n].
  std::vector<VertexId> vertices;
  // False iff the walk meets a truncation-boundary vertex.
  bool finite = false;

  std::size_t degree() const { return vertices.size(); }
  std::vector<std::pair<VertexId, VertexId>> directed_edges() const;
  bool is_simple_cycle() const;
};

// Visits every face exactly once, in order of the smallest half-edge id on it.
// The callback receives the face's vertex walk and its finiteness.
void for_each_face(const RotationGraph& g,
                   const std::function<void(std::span<const VertexId>, bool)>& visit);

std::vector<Face> trace_faces(const RotationGraph& g);

struct DegreeProfile {
  std::size_t min_interior_degree = 0;
  // Empty when the graph has no finite face (trees, tiny truncations).
  std::optional<std::size_t> min_finite_face_degree;
};

// Minima over non-boundary vertices and finite faces. Throws DomainError when
// no interior vertex exists.
DegreeProfile degree_profile(const RotationGraph& g);

struct BallView {
  VertexId center = kNoVertex;
  int radius = 0;
  std::vector<VertexId> members;  // BFS order: distance, then discovery order
  std::vector<int> distances;     // aligned with members
  std::vector<VertexId> sphere;   // members at exactly `radius`
};

BallView ball(const Adjacency& adj, VertexId center, int radius);

// Dense BFS distances from `source`; -1 for vertices farther than max_radius
// (or unreachable). max_radius < 0 means unbounded.
std::vector<std::int32_t> bfs_distances(const Adjacency& adj, VertexId source, int max_radius = -1);

// Shortest-path length, or nullopt when v is unreachable from u.
std::optional<std::size_t> distance(const Adjacency& adj, VertexId u, VertexId v);

// Smallest graph distance from `source` to a boundary vertex, nullopt if none.
std::optional<std::size_t> distance_to_boundary(const Adjacency& adj, VertexId source);

}  // namespace hypsite
