#include "hem/statics.hpp"

#include <cmath>

namespace hem {

TriData tri_data(const TriangleMesh& mesh, int t) {
  TriData d;
  for (int k = 0; k < 3; ++k) d.v[k] = mesh.tri_vertex(t, k);
  Vec3 e1 = d.v[1] - d.v[0], e2 = d.v[2] - d.v[0];
  Vec3 cr = e1.cross(e2);
  d.area = 0.5 * cr.norm();
  d.n = cr.normalized();
  d.centroid = (d.v[0] + d.v[1] + d.v[2]) / 3.0;
  d.diameter = std::max({(d.v[1] - d.v[0]).norm(), (d.v[2] - d.v[1]).norm(),
                         (d.v[0] - d.v[2]).norm()});
  return d;
}

StaticIntegrals triangle_statics(const TriData& tri, const Vec3& r) {
  StaticIntegrals out;
  double d = tri.n.dot(r - tri.v[0]);
  Vec3 rho = r - d * tri.n;
  double ad = std::abs(d);
  double beta_sum = 0.0;
  double scale = tri.diameter;
  for (int i = 0; i < 3; ++i) {
    Vec3 a = tri.v[i], b = tri.v[(i + 1) % 3];
    Vec3 s = (b - a).normalized();
    Vec3 mo = s.cross(tri.n);
    double la = (a - rho).dot(s), lb = (b - rho).dot(s);
    double p0 = (a - rho).dot(mo);
    double ra = (r - a).norm(), rb = (r - b).norm();
    double r02 = p0 * p0 + d * d;
    if (r02 < 1e-28 * scale * scale) continue;  // observation on the edge line
    double f2;
    if (la + lb > 0)
      f2 = std::log((rb + lb) / (ra + la));
    else
      f2 = std::log((ra - la) / (rb - lb));
    double ba = std::atan2(p0 * la, r02 + ad * ra);
    double bb = std::atan2(p0 * lb, r02 + ad * rb);
    double beta = bb - ba;
    out.i0 += p0 * f2 - ad * beta;
    out.iv += 0.5 * mo * (r02 * f2 + lb * rb - la * ra);
    out.grad -= mo * f2;
    beta_sum += beta;
  }
  double sgn = (d > 0) - (d < 0);
  out.grad -= tri.n * (sgn * beta_sum);
  return out;
}


}  // namespace hem
