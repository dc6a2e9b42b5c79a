#pragma once

#include <vector>

#include "hypsite/graph.hpp"

namespace hypsite {

// Regular tiling with `face_sides`-gons meeting `vertex_degree` at every vertex,
// truncated after `radius` combinatorial layers around the origin (vertex 0).
struct TilingSpec {
  int face_sides = 3;
  int vertex_degree = 7;
  int radius = 3;

  bool hyperbolic() const { return (face_sides - 2) * (vertex_degree - 2) > 4; }
};

// Builds the truncated {p,q} tiling layer by layer. Every vertex closer than
// `radius` to the origin is completed (degree q, all incident faces p-gons);
// the remaining vertices are marked boundary. radius 0 yields the single
// origin vertex with meta.degenerate = true.
RotationGraph tiling(const TilingSpec& spec);

// The closed half of a truncated {p,q} tiling (q even) on the right of a
// straight path l through the origin: at each vertex of l exactly q/2 faces lie
// on either side. l starts along the origin's first rotation edge. meta carries
// "origin" and "cut_path" (the vertices of l, in order).
RotationGraph half_plane(const TilingSpec& spec);

// Adds one new vertex inside every finite face that avoids `protected_vertices`
// and joins it to all vertices of that face, keeping the rotation planar.
RotationGraph barycentric_augment(const RotationGraph& g, const std::vector<VertexId>& protected_vertices);

// T_{n+1}: root with n children, every other internal vertex with n+1 children,
// leaves at `depth` marked boundary.
RotationGraph tree_Tn(int n, int depth);

// (2r+1) x (2r+1) grid with its outer ring marked boundary; origin at the center.
RotationGraph square_lattice(int radius);

}  // namespace hypsite
