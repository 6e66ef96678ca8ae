#pragma once

#include <vector>

#include "hem/mesh.hpp"

namespace hem {

// Rao-Wilton-Glisson function on an interior edge: on the plus triangle
// psi = l/(2 A+) (r - p+), on the minus triangle psi = l/(2 A-) (p- - r),
// surface divergence +-l/A. Current flows plus -> minus.
struct RwgFunction {
  int v0, v1;        // shared edge vertices
  int tri_plus, tri_minus;
  int free_plus, free_minus;  // opposite vertex indices
  double length;
};

struct RwgBasis {
  const TriangleMesh* mesh = nullptr;
  std::vector<RwgFunction> functions;
  // functions supported on each triangle: (function index, +1/-1 side)
  std::vector<std::vector<std::pair<int, int>>> tri_functions;

  int size() const { return (int)functions.size(); }
  // psi_n evaluated at r on triangle t (zero if unsupported there)
  Vec3 value(int n, int t, const Vec3& r) const;
  double divergence(int n, int t) const;
};

RwgBasis build_rwg(const TriangleMesh& mesh);

// Edge whose midpoint is closest to the given point, preferring edges
// whose direction is parallel to `along` (unit). Used to pick port edges.
int find_edge_near(const RwgBasis& basis, const Vec3& point, const Vec3& along);

}  // namespace hem
