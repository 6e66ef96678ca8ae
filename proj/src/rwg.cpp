#include "hem/rwg.hpp"

#include <map>

namespace hem {

Vec3 RwgBasis::value(int n, int t, const Vec3& r) const {
  const RwgFunction& f = functions[n];
  if (t == f.tri_plus)
    return f.length / (2.0 * mesh->area(t)) * (r - mesh->vertex(f.free_plus));
  if (t == f.tri_minus)
    return f.length / (2.0 * mesh->area(t)) * (mesh->vertex(f.free_minus) - r);
  return Vec3::Zero();
}

double RwgBasis::divergence(int n, int t) const {
  const RwgFunction& f = functions[n];
  if (t == f.tri_plus) return f.length / mesh->area(t);
  if (t == f.tri_minus) return -f.length / mesh->area(t);
  return 0.0;
}

RwgBasis build_rwg(const TriangleMesh& mesh) {
  RwgBasis basis;
  basis.mesh = &mesh;
  basis.tri_functions.resize(mesh.triangles.size());
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (int t = 0; t < (int)mesh.triangles.size(); ++t)
    for (int k = 0; k < 3; ++k) {
      int a = mesh.triangles[t][k], b = mesh.triangles[t][(k + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  for (const auto& [key, ts] : edges) {
    if (ts.size() != 2) {
      require(ts.size() == 1, "build_rwg: non-manifold edge");
      continue;  // boundary edge carries no function
    }
    auto [a, b] = key;
    // plus triangle traverses the edge as a->b in its oriented loop
    int tp = -1, tm = -1;
    for (int t : ts) {
      bool forward = false;
      for (int k = 0; k < 3; ++k)
        if (mesh.triangles[t][k] == a && mesh.triangles[t][(k + 1) % 3] == b) forward = true;
      (forward ? tp : tm) = t;
    }
    require(tp >= 0 && tm >= 0, "build_rwg: inconsistent orientation");
    auto free_vertex = [&](int t) {
      for (int k = 0; k < 3; ++k) {
        int v = mesh.triangles[t][k];
        if (v != a && v != b) return v;
      }
      return -1;
    };
    RwgFunction f;
    f.v0 = a;
    f.v1 = b;
    f.tri_plus = tp;
    f.tri_minus = tm;
    f.free_plus = free_vertex(tp);
    f.free_minus = free_vertex(tm);
    f.length = (mesh.vertex(a) - mesh.vertex(b)).norm();
    int n = (int)basis.functions.size();
    basis.functions.push_back(f);
    basis.tri_functions[tp].push_back({n, +1});
    basis.tri_functions[tm].push_back({n, -1});
  }
  return basis;
}

int find_edge_near(const RwgBasis& basis, const Vec3& point, const Vec3& along) {
  int best = -1;
  double best_score = 1e300;
  for (int n = 0; n < basis.size(); ++n) {
    const RwgFunction& f = basis.functions[n];
    Vec3 mid = 0.5 * (basis.mesh->vertex(f.v0) + basis.mesh->vertex(f.v1));
    Vec3 dir = (basis.mesh->vertex(f.v1) - basis.mesh->vertex(f.v0)).normalized();
    double miss = (mid - point).norm() + f.length * (1.0 - std::abs(dir.dot(along)));
    if (miss < best_score) {
      best_score = miss;
      best = n;
    }
  }
  require(best >= 0, "find_edge_near: empty basis");
  return best;
}

}  // namespace hem
