#include "hypsite/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "hypsite/error.hpp"

namespace hypsite {

RotationGraph::RotationGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors,
                             std::vector<std::uint8_t> boundary, nlohmann::json meta)
    : offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)),
      boundary_(std::move(boundary)),
      meta_(std::move(meta)) {
  if (offsets_.empty()) throw StructuralError("rotation system has no offset table");
  if (offsets_.front() != 0 || offsets_.back() != neighbors_.size())
    throw StructuralError("rotation offsets do not cover the neighbor array");
  if (boundary_.size() != size())
    throw StructuralError("boundary flag count does not match vertex count");
  if (!meta_.is_object()) meta_ = nlohmann::json::object();
  validate(*this);
}

RotationGraph RotationGraph::from_lists(const std::vector<std::vector<VertexId>>& rotation,
                                        const std::vector<VertexId>& boundary_ids,
                                        nlohmann::json meta) {
  std::vector<std::uint64_t> offsets;
  offsets.reserve(rotation.size() + 1);
  offsets.push_back(0);
  std::vector<VertexId> flat;
  for (const auto& row : rotation) {
    flat.insert(flat.end(), row.begin(), row.end());
    offsets.push_back(flat.size());
  }
  std::vector<std::uint8_t> boundary(rotation.size(), 0);
  for (VertexId b : boundary_ids) {
    if (b >= rotation.size()) throw StructuralError("boundary id " + std::to_string(b) + " out of range");
    boundary[b] = 1;
  }
  return RotationGraph(std::move(offsets), std::move(flat), std::move(boundary), std::move(meta));
}

std::optional<std::size_t> RotationGraph::position(VertexId v, VertexId u) const {
  auto nbrs = neighbors(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    if (nbrs[i] == u) return i;
  return std::nullopt;
}

VertexId RotationGraph::rotate(VertexId v, VertexId u, std::ptrdiff_t steps) const {
  auto pos = position(v, u);
  if (!pos) {
    throw StructuralError("vertex " + std::to_string(u) + " is not a neighbor of " + std::to_string(v));
  }
  auto d = static_cast<std::ptrdiff_t>(degree(v));
  auto idx = (static_cast<std::ptrdiff_t>(*pos) + steps) % d;
  if (idx < 0) idx += d;
  return neighbors(v)[static_cast<std::size_t>(idx)];
}

VertexId RotationGraph::origin() const {
  if (meta_.contains("origin") && meta_["origin"].is_number_unsigned()) {
    auto o = meta_["origin"].get<VertexId>();
    if (o < size()) return o;
  }
  return 0;
}

std::vector<VertexId> RotationGraph::boundary_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < size(); ++v)
    if (boundary_[v]) out.push_back(v);
  return out;
}

void validate(const RotationGraph& g) {
  const std::size_t n = g.size();
  for (VertexId v = 0; v < n; ++v) {
    auto nbrs = g.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      VertexId u = nbrs[i];
      if (u >= n) {
        throw StructuralError("vertex " + std::to_string(v) + " lists out-of-range neighbor " +
                              std::to_string(u));
      }
      if (u == v) throw StructuralError("self-loop at vertex " + std::to_string(v));
      for (std::size_t j = i + 1; j < nbrs.size(); ++j)
        if (nbrs[j] == u) {
          throw StructuralError("repeated neighbor " + std::to_string(u) + " at vertex " +
                                std::to_string(v));
        }
      if (!g.adjacent(u, v)) {
        throw StructuralError("asymmetric adjacency: " + std::to_string(v) + " lists " +
                              std::to_string(u) + " but not conversely");
      }
    }
  }
  if (n == 0) return;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  if (reached != n) {
    throw StructuralError("graph is disconnected: " + std::to_string(reached) + " of " +
                          std::to_string(n) + " vertices reachable from 0");
  }
}

std::vector<std::pair<VertexId, VertexId>> Face::directed_edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
  return out;
}

bool Face::is_simple_cycle() const {
  auto sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

void for_each_face(const RotationGraph& g,
                   const std::function<void(std::span<const VertexId>, bool)>& visit) {
  const auto offsets = g.offsets();
  const auto heads = g.flat_neighbors();
  std::vector<std::uint8_t> used(heads.size(), 0);
  std::vector<VertexId> walk;
  // Tail of each half-edge, found by walking the offsets alongside.
  VertexId tail = 0;
  for (HalfEdgeId start = 0; start < heads.size(); ++start) {
    while (offsets[tail + 1] <= start) ++tail;
    if (used[start]) continue;
    walk.clear();
    bool finite = true;
    VertexId u = tail;
    HalfEdgeId h = start;
    while (!used[h]) {
      used[h] = 1;
      walk.push_back(u);
      if (g.is_boundary(u)) finite = false;
      VertexId v = heads[h];
      // Face on the left of u->v continues with v -> (clockwise neighbor of u at v).
      auto pos = g.position(v, u);
      if (!pos) throw StructuralError("asymmetric adjacency while tracing faces");
      std::size_t d = g.degree(v);
      std::size_t next_slot = (*pos + d - 1) % d;
      h = offsets[v] + next_slot;
      u = v;
    }
    if (h != start) throw StructuralError("face walk did not close on its starting half-edge");
    visit(walk, finite);
  }
}

std::vector<Face> trace_faces(const RotationGraph& g) {
  std::vector<Face> faces;
  for_each_face(g, [&](std::span<const VertexId> walk, bool finite) {
    faces.push_back(Face{std::vector<VertexId>(walk.begin(), walk.end()), finite});
  });
  return faces;
}

DegreeProfile degree_profile(const RotationGraph& g) {
  DegreeProfile profile;
  bool any_interior = false;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (g.is_boundary(v)) continue;
    profile.min_interior_degree =
        any_interior ? std::min(profile.min_interior_degree, g.degree(v)) : g.degree(v);
    any_interior = true;
  }
  if (!any_interior) throw DomainError("degree profile is empty: graph has no interior vertex");
  for_each_face(g, [&](std::span<const VertexId> walk, bool finite) {
    if (!finite) return;
    if (!profile.min_finite_face_degree || walk.size() < *profile.min_finite_face_degree)
      profile.min_finite_face_degree = walk.size();
  });
  return profile;
}

BallView ball(const Adjacency& adj, VertexId center, int radius) {
  if (center >= adj.size()) throw DomainError("ball center out of range");
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  BallView view;
  view.center = center;
  view.radius = radius;
  std::vector<std::int32_t> dist(adj.size(), -1);
  dist[center] = 0;
  view.members.push_back(center);
  view.distances.push_back(0);
  for (std::size_t head = 0; head < view.members.size(); ++head) {
    VertexId v = view.members[head];
    int d = dist[v];
    if (d == radius) continue;
    adj.for_each_neighbor(v, [&](VertexId u) {
      if (dist[u] >= 0) return;
      dist[u] = d + 1;
      view.members.push_back(u);
      view.distances.push_back(d + 1);
    });
  }
  for (std::size_t i = 0; i < view.members.size(); ++i)
    if (view.distances[i] == radius) view.sphere.push_back(view.members[i]);
  return view;
}

std::vector<std::int32_t> bfs_distances(const Adjacency& adj, VertexId source, int max_radius) {
  if (source >= adj.size()) throw DomainError("BFS source out of range");
  std::vector<std::int32_t> dist(adj.size(), -1);
  std::vector<VertexId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    int d = dist[v];
    if (max_radius >= 0 && d == max_radius) continue;
    adj.for_each_neighbor(v, [&](VertexId u) {
      if (dist[u] >= 0) return;
      dist[u] = d + 1;
      queue.push_back(u);
    });
  }
  return dist;
}

std::optional<std::size_t> distance(const Adjacency& adj, VertexId u, VertexId v) {
  if (u >= adj.size() || v >= adj.size()) throw DomainError("distance endpoint out of range");
  if (u == v) return 0;
  std::vector<std::int32_t> dist(adj.size(), -1);
  std::deque<VertexId> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    VertexId x = queue.front();
    queue.pop_front();
    bool found = false;
    adj.for_each_neighbor(x, [&](VertexId y) {
      if (dist[y] >= 0 || found) return;
      dist[y] = dist[x] + 1;
      if (y == v) found = true;
      queue.push_back(y);
    });
    if (found) return static_cast<std::size_t>(dist[v]);
  }
  return std::nullopt;
}

std::optional<std::size_t> distance_to_boundary(const Adjacency& adj, VertexId source) {
  auto dist = bfs_distances(adj, source);
  std::optional<std::size_t> best;
  for (VertexId v = 0; v < adj.size(); ++v) {
    if (!adj.is_boundary(v) || dist[v] < 0) continue;
    auto d = static_cast<std::size_t>(dist[v]);
    if (!best || d < *best) best = d;
  }
  return best;
}

}  // namespace hypsite
