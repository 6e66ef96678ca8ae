#pragma once

#include "hem/mesh.hpp"

namespace hem {

// Per-triangle geometry used by the assembly kernels.
struct TriData {
  Vec3 v[3];
  Vec3 n;
  double area;
  Vec3 centroid;
  double diameter;
};

TriData tri_data(const TriangleMesh& mesh, int t);

// Analytic integrals of the static kernel over a flat triangle, evaluated by
// the standard per-edge line contributions:
//   i0   = int_T 1/R dS'
//   iv   = int_T (r' - rho)/R dS'   (rho: in-plane projection of r)
//   grad = grad_r i0
// Valid for observation points anywhere off the triangle edges' lines.
struct StaticIntegrals {
  double i0 = 0.0;
  Vec3 iv = Vec3::Zero();
  Vec3 grad = Vec3::Zero();
};

StaticIntegrals triangle_statics(const TriData& tri, const Vec3& r);

}  // namespace hem
