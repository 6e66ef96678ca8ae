#include "hem/po.hpp"

#include <iostream>

#include "hem/quadrature.hpp"

namespace hem {

namespace {

bool illuminated(const TriangleMesh& mesh, int t, const AntennaFrame& frame, Shadowing shadowing) {
  if (shadowing == Shadowing::None) return true;
  return mesh.normal(t).dot(mesh.centroid(t) - frame.origin) < 0.0;
}

// PO surface current at a point from antenna outgoing waves f:
// J = 2 nhat x H^a, H^a = (j k0 / sqrt(Z0)) sum_b f_b u_bar(b)^(4)
CVec3 po_current(const Eigen::Matrix3Xcd& waves_global, const VecC& f_dual, const Vec3& nhat,
                 double k0) {
  CVec3 h = jc * k0 / std::sqrt(z0_free) * (waves_global * f_dual);
  return 2.0 * ccross(nhat.cast<cdouble>(), h);
}

VecC dual_reindex(const VecC& f) {
  VecC out(f.size());
  for (int i = 0; i < f.size(); ++i) out[wave_sigma(wave_from_sigma(i).dual())] = f[i];
  return out;
}

}  // namespace

PoRho po_rho(const TriangleMesh& mesh, const AntennaFrame& frame, double k0, int l_max,
             Shadowing shadowing) {
  require(mesh.material.kind == Material::Kind::PEC, "po_rho: PEC structure required");
  for (const auto& v : mesh.vertices)
    require((v - frame.origin).norm() > 0, "po_rho: antenna origin on the surface");
  int nw = num_waves(l_max);
  PoRho out;
  out.l_max = l_max;
  out.frame = frame;
  out.shadowing = shadowing;
  out.rho = MatC::Zero(nw, nw);

  const TriangleRule& rule = triangle_rule(6);
  std::vector<int> dual(nw);
  for (int i = 0; i < nw; ++i) dual[i] = wave_sigma(wave_from_sigma(i).dual());

  MatC cross(3, nw);
  for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
    if (!illuminated(mesh, t, frame, shadowing)) continue;
    double area = mesh.area(t);
    Vec3 nh = mesh.normal(t);
    Vec3 v0 = mesh.tri_vertex(t, 0), v1 = mesh.tri_vertex(t, 1), v2 = mesh.tri_vertex(t, 2);
    for (const auto& qp : rule.pts) {
      Vec3 r = qp.b0 * v0 + qp.b1 * v1 + qp.b2 * v2;
      double w = qp.w * area;
      Vec3 rl = frame.rot.transpose() * (r - frame.origin);
      Eigen::Matrix3Xcd u = frame.rot.cast<cdouble>() * eval_waves(l_max, 4, k0, rl);
      // columns of nhat x u_bar(b)
      for (int b = 0; b < nw; ++b) cross.col(b) = ccross(nh.cast<cdouble>(), u.col(dual[b]));
      out.rho += (-2.0 * jc * k0 * k0 * w) * (u.transpose() * cross);
    }
  }
  return out;
}

CoeffVector po_outgoing(const Gsm& gsm, const PoRho& rho, const VecC& v) {
  int nw = gsm.n_wavefuncs();
  require(rho.rho.rows() == nw, "po_outgoing: wave dimension mismatch");
  MatC shalf = 0.5 * (gsm.s - MatC::Identity(nw, nw));
  MatC feedback = shalf * rho.rho;
  double radius_est = feedback.cwiseAbs().rowwise().sum().maxCoeff();
  if (radius_est >= 1.0)
    std::cerr << "po_outgoing: feedback norm estimate " << radius_est
              << " >= 1, Neumann interpretation unreliable\n";
  Eigen::PartialPivLU<MatC> lu(MatC::Identity(nw, nw) - feedback);
  CoeffVector f;
  f.kind = CoeffKind::Outgoing;
  f.l_max = gsm.l_max;
  f.values = lu.solve(gsm.t * v);
  return f;
}

MatC po_gamma_fullcoupled(const Gsm& gsm, const PoRho& rho) {
  int nw = gsm.n_wavefuncs();
  MatC shalf = 0.5 * (gsm.s - MatC::Identity(nw, nw));
  Eigen::PartialPivLU<MatC> lu(MatC::Identity(nw, nw) - shalf * rho.rho);
  return gsm.gamma + 0.5 * gsm.r * rho.rho * lu.solve(gsm.t);
}

MatC po_gamma_firstorder(const Gsm& gsm, const PoRho& rho) {
  return gsm.gamma + 0.5 * gsm.r * rho.rho * gsm.t;
}

void po_far_field(const CoeffVector& f, const TriangleMesh& mesh, const AntennaFrame& frame,
                  double k0, Shadowing shadowing, PatternCut& cut, bool accumulate) {
  require(f.kind == CoeffKind::Outgoing, "po_far_field: outgoing coefficients required");
  if (!accumulate) {
    cut.e_theta.setZero(cut.size());
    cut.e_phi.setZero(cut.size());
  }
  const TriangleRule& rule = triangle_rule(6);
  VecC fd = dual_reindex(f.values);

  // evaluate the PO current once per source point, then phase it into every
  // observation direction
  std::vector<Vec3> src_pts;
  std::vector<CVec3> src_j;  // weighted current samples
  for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
    if (!illuminated(mesh, t, frame, shadowing)) continue;
    double area = mesh.area(t);
    Vec3 nh = mesh.normal(t);
    Vec3 v0 = mesh.tri_vertex(t, 0), v1 = mesh.tri_vertex(t, 1), v2 = mesh.tri_vertex(t, 2);
    for (const auto& qp : rule.pts) {
      Vec3 r = qp.b0 * v0 + qp.b1 * v1 + qp.b2 * v2;
      Vec3 rl = frame.rot.transpose() * (r - frame.origin);
      Eigen::Matrix3Xcd u = frame.rot.cast<cdouble>() * eval_waves(f.l_max, 4, k0, rl);
      src_pts.push_back(r);
      src_j.push_back(qp.w * area * po_current(u, fd, nh, k0));
    }
  }

  for (int i = 0; i < cut.size(); ++i) {
    Vec3 rh = cut.rhat(i);
    CVec3 nj = CVec3::Zero();
    for (size_t s = 0; s < src_pts.size(); ++s)
      nj += std::exp(jc * k0 * rh.dot(src_pts[s])) * src_j[s];
    CVec3 f_vec =
        -jc * k0 * z0_free / (4.0 * pi) * (nj - rh.cast<cdouble>().dot(nj) * rh.cast<cdouble>());
    double st = std::sin(cut.theta[i]), ct = std::cos(cut.theta[i]);
    Vec3 eth(ct * std::cos(cut.phi[i]), ct * std::sin(cut.phi[i]), -st);
    Vec3 eph(-std::sin(cut.phi[i]), std::cos(cut.phi[i]), 0.0);
    cut.e_theta[i] += eth.cast<cdouble>().dot(f_vec);
    cut.e_phi[i] += eph.cast<cdouble>().dot(f_vec);
  }
}

}  // namespace hem
