#include "hem/coupling.hpp"

#include "hem/quadrature.hpp"

namespace hem {

CouplingMatrix assemble_coupling(const TriangleMesh& mesh, const RwgBasis& basis,
                                 const AntennaFrame& frame, double k0, int l_max, int p,
                                 Formulation formulation, double antenna_radius) {
  require(p == 1 || p == 4, "assemble_coupling: p must be 1 or 4");
  int nw = num_waves(l_max);
  int n = basis.size();
  bool pm = formulation == Formulation::PMCHWT;
  CouplingMatrix cm;
  cm.p = p;
  cm.l_max = l_max;
  cm.frame = frame;
  cm.u = MatC::Zero(nw, pm ? 2 * n : n);

  if (p == 4) {
    for (const auto& v : mesh.vertices) {
      double r = (frame.rot.transpose() * (v - frame.origin)).norm();
      require(r > antenna_radius,
              "assemble_coupling: structure intersects the antenna sphere (outgoing expansion "
              "invalid)");
      require(r > 0.0, "assemble_coupling: mesh touches the antenna origin");
    }
  }

  const TriangleRule& rule = triangle_rule(6);
  double sz = std::sqrt(z0_free);
  Eigen::Matrix3Xcd uvals(3, nw);
  VecC dual(nw);
  for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
    double area = mesh.area(t);
    Vec3 v0 = mesh.tri_vertex(t, 0), v1 = mesh.tri_vertex(t, 1), v2 = mesh.tri_vertex(t, 2);
    for (const auto& qp : rule.pts) {
      Vec3 r = qp.b0 * v0 + qp.b1 * v1 + qp.b2 * v2;
      double w = qp.w * area;
      Vec3 rl = frame.rot.transpose() * (r - frame.origin);
      Eigen::Matrix3Xcd ul = eval_waves(l_max, p, k0, rl);
      uvals = frame.rot.cast<cdouble>() * ul;
      for (auto [nf, side] : basis.tri_functions[t]) {
        const RwgFunction& f = basis.functions[nf];
        Vec3 free_v = basis.mesh->vertex(side > 0 ? f.free_plus : f.free_minus);
        Vec3 psi = side * f.length / (2.0 * area) * (r - free_v);
        // electric block: k0 sqrt(Z0) <u_a, psi>
        VecC proj = uvals.transpose() * psi.cast<cdouble>();
        cm.u.col(nf) += (w * k0 * sz) * proj;
        if (pm) {
          // magnetic block: -(k0/sqrt(Z0)) <u_bar(a), psi>; reindexing the
          // projection by the dual swap gives <u_bar(a), psi> rows
          for (int i = 0; i < nw; ++i) dual[wave_sigma(wave_from_sigma(i).dual())] = proj[i];
          cm.u.col(n + nf) -= (w * k0 / sz) * dual;
        }
      }
    }
  }
  return cm;
}

}  // namespace hem
