#include "hypsite/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>

#include "hypsite/error.hpp"

namespace hypsite {
namespace {

using nlohmann::json;

// Grows a {p,q} tiling as a topological disk. Every vertex on the disk
// boundary owns a "fan": its neighbors in counterclockwise order, starting at
// its boundary successor and ending at its boundary predecessor, so that the
// faces already present sit between consecutive fan entries. A vertex with q
// faces is closed and its fan becomes its full rotation.
//
// Fans live in a fixed-stride array (q slots per vertex) so that very large
// truncations stay compact.
class TilingBuilder {
 public:
  TilingBuilder(int p, int q) : p_(p), q_(q) {}

  void grow(int radius) {
    VertexId origin = new_vertex(0);
    std::vector<VertexId> ring;
    for (int j = 1; j < p_; ++j) ring.push_back(new_vertex(j));
    for (int j = 0; j < p_ - 1; ++j) dist_[ring[j]] = std::min(j + 1, p_ - 1 - j);
    push_back(origin, ring.front());
    push_back(origin, ring.back());
    faces_[origin] = 1;
    for (int j = 0; j < p_ - 1; ++j) {
      push_back(ring[j], j + 1 < p_ - 1 ? ring[j + 1] : origin);
      push_back(ring[j], j > 0 ? ring[j - 1] : origin);
      faces_[ring[j]] = 1;
    }
    for (VertexId x = 0; x < vertex_count(); ++x) {
      if (closed_[x] || dist_[x] >= radius) continue;
      complete(x);
    }
  }

  std::size_t vertex_count() const { return count_.size(); }

  // Moves the fans into CSR form and releases the builder storage.
  RotationGraph finish(json meta) {
    const std::size_t n = vertex_count();
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + count_[v];
    std::vector<VertexId> flat(offsets[n]);
    for (std::size_t v = 0; v < n; ++v)
      std::copy_n(slots_.begin() + static_cast<std::ptrdiff_t>(v * q_), count_[v],
                  flat.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
    std::vector<VertexId>().swap(slots_);
    std::vector<std::uint8_t> boundary(n);
    for (std::size_t v = 0; v < n; ++v) boundary[v] = closed_[v] ? 0 : 1;
    return RotationGraph(std::move(offsets), std::move(flat), std::move(boundary), std::move(meta));
  }

 private:
  int p_;
  int q_;
  std::vector<VertexId> slots_;
  std::vector<std::uint8_t> count_;
  std::vector<std::uint8_t> faces_;
  std::vector<std::uint8_t> closed_;
  std::vector<std::int32_t> dist_;

  VertexId new_vertex(std::int32_t dist) {
    if (vertex_count() >= kNoVertex - 1) throw BudgetError("tiling exceeds 32-bit vertex ids");
    auto id = static_cast<VertexId>(vertex_count());
    slots_.resize(slots_.size() + static_cast<std::size_t>(q_), kNoVertex);
    count_.push_back(0);
    faces_.push_back(0);
    closed_.push_back(0);
    dist_.push_back(dist);
    return id;
  }

  VertexId* fan(VertexId v) { return slots_.data() + static_cast<std::size_t>(v) * q_; }
  VertexId succ(VertexId v) { return fan(v)[0]; }
  VertexId pred(VertexId v) { return fan(v)[count_[v] - 1]; }

  bool fan_contains(VertexId v, VertexId u) {
    VertexId* f = fan(v);
    return std::find(f, f + count_[v], u) != f + count_[v];
  }

  void push_back(VertexId v, VertexId u) {
    if (count_[v] >= q_) throw StructuralError("tiling construction exceeded vertex degree");
    fan(v)[count_[v]++] = u;
  }

  void push_front(VertexId v, VertexId u) {
    if (count_[v] >= q_) throw StructuralError("tiling construction exceeded vertex degree");
    VertexId* f = fan(v);
    std::copy_backward(f, f + count_[v], f + count_[v] + 1);
    f[0] = u;
    ++count_[v];
  }

  void complete(VertexId x) {
    const auto full = static_cast<std::uint8_t>(q_);
    const auto last = static_cast<std::uint8_t>(q_ - 1);
    while (faces_[x] < full) {
      std::deque<VertexId> seg;
      if (faces_[x] == last) seg = {pred(x), x, succ(x)};
      else seg = {x, succ(x)};
      // A segment end that would reach q faces must itself be closed, so the
      // new face wraps around it.
      while (faces_[seg.back()] == last && seg.back() != x && seg.size() <= static_cast<std::size_t>(p_))
        seg.push_back(succ(seg.back()));
      while (faces_[seg.front()] == last && seg.front() != x && seg.size() <= static_cast<std::size_t>(p_))
        seg.push_front(pred(seg.front()));
      add_face(seg);
    }
  }

  void add_face(const std::deque<VertexId>& seg) {
    const int k = p_ - static_cast<int>(seg.size());
    if (k < 0) {
      throw StructuralError("tiling construction needs a face of more than " + std::to_string(p_) +
                            " sides; {p,q} growth is inconsistent");
    }
    const VertexId s0 = seg.front();
    const VertexId sm = seg.back();
    if (s0 == sm) throw StructuralError("tiling construction wrapped around the whole disk");
    for (std::size_t i = 1; i + 1 < seg.size(); ++i) {
      VertexId s = seg[i];
      if (faces_[s] != q_ - 1) throw StructuralError("tiling construction closed an incomplete vertex");
      faces_[s] = static_cast<std::uint8_t>(q_);
      closed_[s] = 1;
    }
    if (k == 0 && fan_contains(s0, sm)) throw StructuralError("tiling construction duplicated an edge");

    std::vector<VertexId> fresh;
    for (int j = 1; j <= k; ++j) {
      fresh.push_back(new_vertex(std::min(dist_[s0] + j, dist_[sm] + k + 1 - j)));
    }
    for (int j = 0; j < k; ++j) {
      VertexId w = fresh[j];
      push_back(w, j + 1 < k ? fresh[j + 1] : sm);
      push_back(w, j > 0 ? fresh[j - 1] : s0);
      faces_[w] = 1;
    }
    push_front(s0, k > 0 ? fresh.front() : sm);
    push_back(sm, k > 0 ? fresh.back() : s0);
    ++faces_[s0];
    ++faces_[sm];
    if (k == 0) {
      dist_[s0] = std::min(dist_[s0], dist_[sm] + 1);
      dist_[sm] = std::min(dist_[sm], dist_[s0] + 1);
    }
  }
};

void check_spec(const TilingSpec& spec) {
  if (spec.face_sides < 3 || spec.vertex_degree < 3)
    throw DomainError("tiling needs face_sides >= 3 and vertex_degree >= 3");
  if (spec.vertex_degree > 255) throw DomainError("vertex_degree above 255 is not supported");
  if (spec.radius < 0) throw DomainError("tiling radius must be nonnegative");
  if ((spec.face_sides - 2) * (spec.vertex_degree - 2) < 4)
    throw DomainError("spherical {p,q} tilings are finite and not supported");
}

json tiling_meta(const TilingSpec& spec, const char* generator) {
  return json{{"generator", generator},
              {"p", spec.face_sides},
              {"q", spec.vertex_degree},
              {"radius", spec.radius},
              {"origin", 0}};
}

}  // namespace

RotationGraph tiling(const TilingSpec& spec) {
  check_spec(spec);
  if (spec.radius == 0) {
    auto meta = tiling_meta(spec, "tiling");
    meta["degenerate"] = true;
    return RotationGraph({0, 0}, {}, {1}, std::move(meta));
  }
  TilingBuilder builder(spec.face_sides, spec.vertex_degree);
  builder.grow(spec.radius);
  return builder.finish(tiling_meta(spec, "tiling"));
}

RotationGraph half_plane(const TilingSpec& spec) {
  if (spec.vertex_degree % 2 != 0)
    throw DomainError("half_plane needs an even vertex degree to split faces evenly");
  if (spec.radius < 1) throw DomainError("half_plane needs radius >= 1");
  const RotationGraph full = tiling(spec);
  const std::ptrdiff_t half = spec.vertex_degree / 2;
  const VertexId origin = 0;

  auto walk = [&](VertexId first) {
    std::vector<VertexId> ray{first};
    VertexId prev = origin;
    VertexId cur = first;
    while (!full.is_boundary(cur)) {
      VertexId next = full.rotate(cur, prev, half);
      prev = cur;
      cur = next;
      ray.push_back(cur);
    }
    return ray;
  };
  const VertexId ahead = full.neighbors(origin)[0];
  const VertexId behind = full.rotate(origin, ahead, half);
  std::vector<VertexId> cut = walk(behind);
  std::reverse(cut.begin(), cut.end());
  cut.push_back(origin);
  for (VertexId v : walk(ahead)) cut.push_back(v);

  const std::size_t n = full.size();
  std::vector<std::uint8_t> on_cut(n, 0), keep(n, 0);
  for (VertexId v : cut) on_cut[v] = keep[v] = 1;
  std::vector<VertexId> stack;
  for (std::size_t i = 1; i + 1 < cut.size(); ++i) {
    for (std::ptrdiff_t j = 1; j < half; ++j) {
      VertexId r = full.rotate(cut[i], cut[i - 1], j);
      if (!keep[r]) {
        keep[r] = 1;
        stack.push_back(r);
      }
    }
  }
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : full.neighbors(v))
      if (!keep[u] && !on_cut[u]) {
        keep[u] = 1;
        stack.push_back(u);
      }
  }
  for (std::size_t i = 1; i + 1 < cut.size(); ++i) {
    for (std::ptrdiff_t j = half + 1; j < spec.vertex_degree; ++j) {
      if (keep[full.rotate(cut[i], cut[i - 1], j)])
        throw StructuralError("half_plane cut does not separate the truncation");
    }
  }

  std::vector<VertexId> relabel(n, kNoVertex);
  VertexId next_id = 0;
  for (VertexId v = 0; v < n; ++v)
    if (keep[v]) relabel[v] = next_id++;
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(next_id + 1);
  std::vector<VertexId> flat;
  std::vector<std::uint8_t> boundary;
  boundary.reserve(next_id);
  for (VertexId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    for (VertexId u : full.neighbors(v))
      if (keep[u]) flat.push_back(relabel[u]);
    offsets.push_back(flat.size());
    boundary.push_back(full.is_boundary(v) ? 1 : 0);
  }
  json meta = tiling_meta(spec, "half_plane");
  meta["origin"] = relabel[origin];
  json path = json::array();
  for (VertexId v : cut) path.push_back(relabel[v]);
  meta["cut_path"] = std::move(path);
  return RotationGraph(std::move(offsets), std::move(flat), std::move(boundary), std::move(meta));
}

RotationGraph barycentric_augment(const RotationGraph& g, const std::vector<VertexId>& protected_vertices) {
  std::vector<std::uint8_t> guarded(g.size(), 0);
  for (VertexId v : protected_vertices) {
    if (v >= g.size()) throw DomainError("protected vertex out of range");
    guarded[v] = 1;
  }
  std::vector<std::vector<VertexId>> rotation(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    auto nbrs = g.neighbors(v);
    rotation[v].assign(nbrs.begin(), nbrs.end());
  }
  std::size_t added = 0;
  for_each_face(g, [&](std::span<const VertexId> walk, bool finite) {
    if (!finite || walk.size() < 3) return;
    if (std::any_of(walk.begin(), walk.end(), [&](VertexId v) { return guarded[v] != 0; })) return;
    auto center = static_cast<VertexId>(rotation.size());
    rotation.emplace_back(walk.begin(), walk.end());
    const std::size_t k = walk.size();
    for (std::size_t i = 0; i < k; ++i) {
      // The face corner at walk[i] runs counterclockwise from walk[i+1] to walk[i-1].
      auto& rot = rotation[walk[i]];
      auto anchor = std::find(rot.begin(), rot.end(), walk[(i + 1) % k]);
      rot.insert(anchor + 1, center);
    }
    ++added;
  });
  std::vector<VertexId> boundary = g.boundary_vertices();
  json meta = g.meta();
  meta["generator"] = meta.value("generator", std::string("graph")) + "+augment";
  meta["augmented_faces"] = added;
  return RotationGraph::from_lists(rotation, boundary, std::move(meta));
}

RotationGraph tree_Tn(int n, int depth) {
  if (n < 1) throw DomainError("tree_Tn needs n >= 1");
  if (depth < 0) throw DomainError("tree_Tn needs depth >= 0");
  std::vector<std::vector<VertexId>> rotation(1);
  std::vector<VertexId> level{0};
  std::vector<VertexId> boundary;
  for (int d = 0; d < depth; ++d) {
    std::vector<VertexId> next;
    for (VertexId parent : level) {
      const int children = parent == 0 ? n : n + 1;
      for (int c = 0; c < children; ++c) {
        auto child = static_cast<VertexId>(rotation.size());
        if (rotation.size() >= kNoVertex - 1) throw BudgetError("tree exceeds 32-bit vertex ids");
        rotation.push_back({parent});
        rotation[parent].push_back(child);
        next.push_back(child);
      }
    }
    level = std::move(next);
  }
  boundary = level;
  json meta{{"generator", "tree"}, {"n", n}, {"depth", depth}, {"origin", 0}};
  return RotationGraph::from_lists(rotation, boundary, std::move(meta));
}

RotationGraph square_lattice(int radius) {
  if (radius < 0) throw DomainError("square_lattice radius must be nonnegative");
  const int side = 2 * radius + 1;
  auto id = [&](int x, int y) { return static_cast<VertexId>((y + radius) * side + (x + radius)); };
  std::vector<std::vector<VertexId>> rotation(static_cast<std::size_t>(side) * side);
  std::vector<VertexId> boundary;
  for (int y = -radius; y <= radius; ++y) {
    for (int x = -radius; x <= radius; ++x) {
      auto& rot = rotation[id(x, y)];
      if (x < radius) rot.push_back(id(x + 1, y));
      if (y < radius) rot.push_back(id(x, y + 1));
      if (x > -radius) rot.push_back(id(x - 1, y));
      if (y > -radius) rot.push_back(id(x, y - 1));
      if (std::abs(x) == radius || std::abs(y) == radius) boundary.push_back(id(x, y));
    }
  }
  json meta{{"generator", "square_lattice"}, {"radius", radius}, {"origin", id(0, 0)}};
  return RotationGraph::from_lists(rotation, boundary, std::move(meta));
}

}  // namespace hypsite
