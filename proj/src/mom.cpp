#include "hem/mom.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "hem/iobin.hpp"
#include "hem/quadrature.hpp"
#include "hem/statics.hpp"

namespace hem {

namespace {

// regularized kernels: gr = (e^{-jkR}-1)/(4 pi R) and the twice-subtracted
// gradient factor gs2 with grad g = s(R) Rhat,
//   s(R) = -1/(4 pi R^2) - k^2/(8 pi) + gs2(R),  gs2 = O(R),
// so the direction-discontinuous pieces integrate analytically.
inline void kernel_smooth(cdouble k, double R, cdouble& gr, cdouble& gs2) {
  cdouble x = -jc * k * R;
  if (std::abs(x) < 1e-3) {
    gr = -jc * k * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0) / (4.0 * pi);
    // s(R) + 1/(4 pi R^2) + k^2/(8 pi) = j k^3 R/(12 pi) + k^4 R^2/(32 pi) + ...
    gs2 = jc * k * k * k * R / (12.0 * pi) + k * k * k * k * R * R / (32.0 * pi);
  } else {
    cdouble ex = std::exp(x);
    gr = (ex - 1.0) / (4.0 * pi * R);
    // (x e^x - e^x + 1) = x^2/2 + x^3/3 + ...: the static 1/R^2 pole is
    // already subtracted by the +1; remove the constant -k^2/(8 pi) too
    gs2 = (x * ex - ex + 1.0) / (4.0 * pi * R * R) + k * k / (8.0 * pi);
  }
}

inline void kernel_full(cdouble k, double R, cdouble& g, cdouble& gs) {
  cdouble ex = std::exp(-jc * k * R);
  g = ex / (4.0 * pi * R);
  gs = ex * (-jc * k * R - 1.0) / (4.0 * pi * R * R);
}

// inner integrals over a source triangle seen from one observation point:
// t0 = int g, tv = int g r', gg = int grad_r g
struct InnerIntegrals {
  cdouble t0;
  CVec3 tv;
  CVec3 gg;
};

struct QuadCache {
  std::vector<Vec3> pts;
  std::vector<double> w;  // includes area
};

QuadCache quad_on(const TriData& tri, const TriangleRule& rule) {
  QuadCache q;
  q.pts.reserve(rule.pts.size());
  q.w.reserve(rule.pts.size());
  for (const auto& p : rule.pts) {
    q.pts.push_back(p.b0 * tri.v[0] + p.b1 * tri.v[1] + p.b2 * tri.v[2]);
    q.w.push_back(p.w * tri.area);
  }
  return q;
}

InnerIntegrals inner_far(cdouble k, const Vec3& r, const QuadCache& src) {
  InnerIntegrals out{cdouble(0), CVec3::Zero(), CVec3::Zero()};
  for (size_t j = 0; j < src.pts.size(); ++j) {
    Vec3 d = r - src.pts[j];
    double R = d.norm();
    cdouble g, gs;
    kernel_full(k, R, g, gs);
    out.t0 += src.w[j] * g;
    out.tv += src.w[j] * g * src.pts[j].cast<cdouble>();
    out.gg += src.w[j] * gs / R * d.cast<cdouble>();
  }
  return out;
}

InnerIntegrals inner_near(cdouble k, const Vec3& r, const TriData& tri, const QuadCache& src) {
  InnerIntegrals out{cdouble(0), CVec3::Zero(), CVec3::Zero()};
  for (size_t j = 0; j < src.pts.size(); ++j) {
    Vec3 d = r - src.pts[j];
    double R = d.norm();
    cdouble gr, gs2;
    kernel_smooth(k, R, gr, gs2);
    out.t0 += src.w[j] * gr;
    out.tv += src.w[j] * gr * src.pts[j].cast<cdouble>();
    if (R > 1e-15 * tri.diameter) out.gg += src.w[j] * gs2 / R * d.cast<cdouble>();
  }
  StaticIntegrals st = triangle_statics(tri, r);
  double inv4pi = 1.0 / (4.0 * pi);
  double dn = tri.n.dot(r - tri.v[0]);
  Vec3 rho = r - dn * tri.n;
  out.t0 += inv4pi * st.i0;
  out.tv += inv4pi * (st.iv + st.i0 * rho).cast<cdouble>();
  // grad g = grad g0 - (k^2/(8 pi)) Rhat + O(R): both singular-direction
  // pieces integrate analytically; int Rhat dS' = (r - rho) i0 - iv
  out.gg += inv4pi * st.grad.cast<cdouble>();
  out.gg += (-k * k / (8.0 * pi)) * ((r - rho) * st.i0 - st.iv).cast<cdouble>();
  return out;
}

struct LocalFn {
  int index;      // global RWG index
  double coef;    // side * l / (2A)
  double div;     // side * l / A
  Vec3 free_v;
};

std::vector<LocalFn> local_fns(const RwgBasis& basis, int t) {
  std::vector<LocalFn> out;
  for (auto [n, side] : basis.tri_functions[t]) {
    const RwgFunction& f = basis.functions[n];
    double area = basis.mesh->area(t);
    LocalFn lf;
    lf.index = n;
    lf.coef = side * f.length / (2.0 * area);
    lf.div = side * f.length / area;
    lf.free_v = basis.mesh->vertex(side > 0 ? f.free_plus : f.free_minus);
    out.push_back(lf);
  }
  return out;
}

// two-level uniform refinement with a degree-5 rule per cell, for the outer
// integral of touching pairs (its integrand has edge-log behavior)
QuadCache quad_subdivided(const TriData& tri, const TriangleRule& cell_rule, int levels) {
  QuadCache q;
  std::function<void(const Vec3&, const Vec3&, const Vec3&, int)> split =
      [&](const Vec3& a, const Vec3& b, const Vec3& c, int lvl) {
        if (lvl == 0) {
          double area = 0.5 * (b - a).cross(c - a).norm();
          for (const auto& p : cell_rule.pts) {
            q.pts.push_back(p.b0 * a + p.b1 * b + p.b2 * c);
            q.w.push_back(p.w * area);
          }
          return;
        }
        Vec3 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
        split(a, ab, ca, lvl - 1);
        split(ab, b, bc, lvl - 1);
        split(ca, bc, c, lvl - 1);
        split(ab, bc, ca, lvl - 1);
      };
  split(tri.v[0], tri.v[1], tri.v[2], levels);
  return q;
}

struct AssemblyPlan {
  std::vector<TriData> tris;
  std::vector<QuadCache> q6, q12, qsub;
  std::vector<std::vector<LocalFn>> fns;
};

AssemblyPlan build_plan(const TriangleMesh& mesh, const RwgBasis& basis) {
  AssemblyPlan plan;
  int nt = (int)mesh.triangles.size();
  plan.tris.reserve(nt);
  const TriangleRule& r6 = triangle_rule(6);
  const TriangleRule& r7 = triangle_rule(7);
  const TriangleRule& r12 = triangle_rule(12);
  for (int t = 0; t < nt; ++t) {
    plan.tris.push_back(tri_data(mesh, t));
    plan.q6.push_back(quad_on(plan.tris[t], r6));
    plan.q12.push_back(quad_on(plan.tris[t], r12));
    plan.qsub.push_back(quad_subdivided(plan.tris[t], r7, 2));
    plan.fns.push_back(local_fns(basis, t));
  }
  return plan;
}

bool share_vertex(const TriangleMesh& mesh, int ta, int tb) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (mesh.triangles[ta][i] == mesh.triangles[tb][j]) return true;
  return false;
}

// One L/K interaction of a triangle pair at one wavenumber. adds into the
// caller-provided accumulators indexed [a][b] over local functions.
struct PairBlocks {
  cdouble l[3][3];
  cdouble k[3][3];
};

void pair_blocks(const AssemblyPlan& plan, const TriangleMesh& mesh, int tm, int tn, cdouble kw,
                 PairBlocks& out) {
  bool touching = share_vertex(mesh, tm, tn);
  const TriData& tdn = plan.tris[tn];
  double near_dist = 2.0 * std::max(plan.tris[tm].diameter, tdn.diameter);
  bool near = touching || (plan.tris[tm].centroid - tdn.centroid).norm() < near_dist;
  // touching pairs: the outer integrand inherits edge-log behavior from the
  // analytically integrated inner kernel, so refine the outer rule
  const QuadCache& outer = touching ? plan.qsub[tm] : (near ? plan.q12[tm] : plan.q6[tm]);
  const QuadCache& src = near ? plan.q12[tn] : plan.q6[tn];
  const auto& fa = plan.fns[tm];
  const auto& fb = plan.fns[tn];
  bool same = tm == tn;

  for (auto& row : out.l)
    for (auto& x : row) x = 0;
  for (auto& row : out.k)
    for (auto& x : row) x = 0;

  cdouble k2 = kw * kw;
  for (size_t i = 0; i < outer.pts.size(); ++i) {
    const Vec3& r = outer.pts[i];
    InnerIntegrals in = near ? inner_near(kw, r, tdn, src) : inner_far(kw, r, src);
    double wi = outer.w[i];
    for (size_t a = 0; a < fa.size(); ++a) {
      Vec3 psi_a = fa[a].coef * (r - fa[a].free_v);
      for (size_t b = 0; b < fb.size(); ++b) {
        cdouble lsum = fb[b].coef * (psi_a.cast<cdouble>().dot(in.tv) -
                                     psi_a.dot(fb[b].free_v) * in.t0) -
                       fa[a].div * fb[b].div / k2 * in.t0;
        out.l[a][b] += wi * lsum;
        if (!same) {
          CVec3 cross = ccross(in.gg, (r - fb[b].free_v).cast<cdouble>());
          out.k[a][b] += wi * fb[b].coef * psi_a.cast<cdouble>().dot(cross);
        }
      }
    }
  }
}

}  // namespace

ImpedanceMatrix assemble_efie(const TriangleMesh& mesh, const RwgBasis& basis, double frequency) {
  require(mesh.material.kind == Material::Kind::PEC, "assemble_efie: PEC mesh required");
  ImpedanceMatrix zm;
  zm.formulation = Formulation::EFIE;
  zm.frequency = frequency;
  zm.k0 = 2.0 * pi * frequency / c0;
  zm.mesh = &mesh;
  zm.basis = &basis;
  int n = basis.size();
  zm.z = MatC::Zero(n, n);

  AssemblyPlan plan = build_plan(mesh, basis);
  int nt = (int)mesh.triangles.size();
  PairBlocks fwd, rev;
  cdouble jkz = jc * zm.k0 * z0_free;
  // touching pairs use the orientation-averaged quadrature so the assembled
  // matrix keeps the Galerkin symmetry to roundoff there as well
  for (int tm = 0; tm < nt; ++tm) {
    const auto& fa = plan.fns[tm];
    // self block, symmetrized within
    pair_blocks(plan, mesh, tm, tm, cdouble(zm.k0), fwd);
    for (size_t a = 0; a < fa.size(); ++a)
      for (size_t b = 0; b < fa.size(); ++b)
        zm.z(fa[a].index, fa[b].index) += jkz * 0.5 * (fwd.l[a][b] + fwd.l[b][a]);
    for (int tn = tm + 1; tn < nt; ++tn) {
      bool touching = share_vertex(mesh, tm, tn);
      pair_blocks(plan, mesh, tm, tn, cdouble(zm.k0), fwd);
      pair_blocks(plan, mesh, tn, tm, cdouble(zm.k0), rev);
      const auto& fb = plan.fns[tn];
      for (size_t a = 0; a < fa.size(); ++a)
        for (size_t b = 0; b < fb.size(); ++b) {
          cdouble lf = fwd.l[a][b], lr = rev.l[b][a];
          if (touching) lf = lr = 0.5 * (lf + lr);
          zm.z(fa[a].index, fb[b].index) += jkz * lf;
          zm.z(fb[b].index, fa[a].index) += jkz * lr;
        }
    }
  }
  return zm;
}

ImpedanceMatrix assemble_pmchwt(const TriangleMesh& mesh, const RwgBasis& basis, double frequency) {
  require(mesh.material.kind == Material::Kind::Penetrable,
          "assemble_pmchwt: penetrable material required");
  ImpedanceMatrix zm;
  zm.formulation = Formulation::PMCHWT;
  zm.frequency = frequency;
  zm.k0 = 2.0 * pi * frequency / c0;
  zm.k_d = mesh.material.k_d(zm.k0);
  zm.z_d = mesh.material.z_d();
  zm.mesh = &mesh;
  zm.basis = &basis;
  int n = basis.size();
  zm.z = MatC::Zero(2 * n, 2 * n);

  AssemblyPlan plan = build_plan(mesh, basis);
  int nt = (int)mesh.triangles.size();
  PairBlocks b0f, bdf, b0r, bdr;
  cdouble c_ee = jc * zm.k0 * z0_free, c_ee_d = jc * zm.k_d * zm.z_d;
  cdouble c_hh = jc * zm.k0 / z0_free, c_hh_d = jc * zm.k_d / zm.z_d;
  auto stamp = [&](int m, int q, cdouble l0, cdouble ld, cdouble k0v, cdouble kdv) {
    cdouble ksum = -jc * (k0v + kdv);
    zm.z(m, q) += c_ee * l0 + c_ee_d * ld;
    zm.z(m, n + q) += ksum;
    zm.z(n + m, q) += ksum;
    zm.z(n + m, n + q) += c_hh * l0 + c_hh_d * ld;
  };
  for (int tm = 0; tm < nt; ++tm) {
    const auto& fa = plan.fns[tm];
    pair_blocks(plan, mesh, tm, tm, cdouble(zm.k0), b0f);
    pair_blocks(plan, mesh, tm, tm, zm.k_d, bdf);
    for (size_t a = 0; a < fa.size(); ++a)
      for (size_t b = 0; b < fa.size(); ++b)
        stamp(fa[a].index, fa[b].index, 0.5 * (b0f.l[a][b] + b0f.l[b][a]),
              0.5 * (bdf.l[a][b] + bdf.l[b][a]), 0.5 * (b0f.k[a][b] + b0f.k[b][a]),
              0.5 * (bdf.k[a][b] + bdf.k[b][a]));
    for (int tn = tm + 1; tn < nt; ++tn) {
      bool touching = share_vertex(mesh, tm, tn);
      pair_blocks(plan, mesh, tm, tn, cdouble(zm.k0), b0f);
      pair_blocks(plan, mesh, tm, tn, zm.k_d, bdf);
      pair_blocks(plan, mesh, tn, tm, cdouble(zm.k0), b0r);
      pair_blocks(plan, mesh, tn, tm, zm.k_d, bdr);
      const auto& fb = plan.fns[tn];
      for (size_t a = 0; a < fa.size(); ++a)
        for (size_t b = 0; b < fb.size(); ++b) {
          cdouble l0f = b0f.l[a][b], l0r = b0r.l[b][a];
          cdouble ldf = bdf.l[a][b], ldr = bdr.l[b][a];
          cdouble k0f = b0f.k[a][b], k0r = b0r.k[b][a];
          cdouble kdf = bdf.k[a][b], kdr = bdr.k[b][a];
          if (touching) {
            l0f = l0r = 0.5 * (l0f + l0r);
            ldf = ldr = 0.5 * (ldf + ldr);
            k0f = k0r = 0.5 * (k0f + k0r);
            kdf = kdr = 0.5 * (kdf + kdr);
          }
          stamp(fa[a].index, fb[b].index, l0f, ldf, k0f, kdf);
          stamp(fb[b].index, fa[a].index, l0r, ldr, k0r, kdr);
        }
    }
  }
  return zm;
}

VecC excitation_plane_wave(const RwgBasis& basis, Formulation formulation, const PlaneWave& pw,
                           double k0) {
  const TriangleMesh& mesh = *basis.mesh;
  int n = basis.size();
  VecC v = VecC::Zero(formulation == Formulation::PMCHWT ? 2 * n : n);
  const TriangleRule& rule = triangle_rule(6);
  CVec3 hhat = ccross(pw.khat.cast<cdouble>(), pw.ehat) / z0_free;
  for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
    TriData td = tri_data(mesh, t);
    QuadCache q = quad_on(td, rule);
    for (auto lf : local_fns(basis, t)) {
      for (size_t i = 0; i < q.pts.size(); ++i) {
        cdouble ph = pw.amplitude * std::exp(-jc * k0 * pw.khat.dot(q.pts[i]));
        Vec3 psi = lf.coef * (q.pts[i] - lf.free_v);
        v[lf.index] += q.w[i] * ph * (psi.x() * pw.ehat.x() + psi.y() * pw.ehat.y() +
                                      psi.z() * pw.ehat.z());
        if (formulation == Formulation::PMCHWT)
          v[n + lf.index] += q.w[i] * jc * ph *
                             (psi.x() * hhat.x() + psi.y() * hhat.y() + psi.z() * hhat.z());
      }
    }
  }
  return v;
}

VecC excitation_delta_gap(const RwgBasis& basis, Formulation formulation, int port_edge,
                          cdouble gap_voltage) {
  int n = basis.size();
  require(port_edge >= 0 && port_edge < n, "excitation_delta_gap: bad port edge");
  VecC v = VecC::Zero(formulation == Formulation::PMCHWT ? 2 * n : n);
  v[port_edge] = gap_voltage * basis.functions[port_edge].length;
  return v;
}

void LuSolver::factor(const MatC& a) {
  require(a.rows() == a.cols(), "LuSolver: square matrix required");
  a_ = a;
  Eigen::PartialPivLU<MatC> lu(a_);
  lu_ = lu.matrixLU();
  // materialize the row permutation action independent of Eigen's convention
  int n = (int)a.rows();
  VecR idx = VecR::LinSpaced(n, 0, n - 1);
  VecR moved = lu.permutationP() * idx;
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = (int64_t)std::llround(moved[i]);
  factored_ = true;
}

MatC LuSolver::apply_factors(const MatC& rhs) const {
  MatC y(rhs.rows(), rhs.cols());
  for (int i = 0; i < rhs.rows(); ++i) y.row(i) = rhs.row(perm_[i]);
  lu_.triangularView<Eigen::UnitLower>().solveInPlace(y);
  lu_.triangularView<Eigen::Upper>().solveInPlace(y);
  return y;
}

void LuSolver::save_factors(const std::string& lu_path, const std::string& piv_path) const {
  require(factored_, "LuSolver: factor first");
  save_matrix(lu_, lu_path);
  save_ints(perm_, piv_path);
}

void LuSolver::load_factors(const MatC& a, const std::string& lu_path, const std::string& piv_path) {
  a_ = a;
  lu_ = load_matrix(lu_path);
  perm_ = load_ints(piv_path);
  require(lu_.rows() == a_.rows() && (int64_t)perm_.size() == a_.rows(),
          "LuSolver: stored factors do not match the matrix");
  factored_ = true;
}

namespace {

// residual of a wide solve via a fixed random right combination; exact
// per-column residuals are only affordable for a handful of columns
double combined_residual(const MatC& a, const MatC& x, const MatC& rhs) {
  if (!x.allFinite()) return std::numeric_limits<double>::infinity();
  if (rhs.cols() <= 8) {
    double worst = 0.0;
    for (int c = 0; c < rhs.cols(); ++c) {
      double vn = rhs.col(c).norm();
      if (vn == 0.0) continue;
      worst = std::max(worst, (rhs.col(c) - a * x.col(c)).norm() / vn);
    }
    return worst;
  }
  VecC comb(rhs.cols());
  uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int c = 0; c < rhs.cols(); ++c) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    comb[c] = cdouble((double)(state >> 11) / 9.007199254740992e15 - 0.5,
                      (double)((state * 2862933555777941757ull) >> 11) / 9.007199254740992e15 - 0.5);
  }
  VecC vc = rhs * comb;
  double vn = vc.norm();
  if (vn == 0.0) return 0.0;
  return (vc - a * (x * comb)).norm() / vn;
}

}  // namespace

MatC LuSolver::solve(const MatC& rhs) const {
  require(factored_, "LuSolver: factor first");
  if (rhs.norm() == 0.0) return MatC::Zero(rhs.rows(), rhs.cols());
  MatC x = apply_factors(rhs);
  for (int pass = 0; pass < 3; ++pass) {
    if (combined_residual(a_, x, rhs) <= 1e-10) return x;
    x += apply_factors(rhs - a_ * x);
  }
  double rel = combined_residual(a_, x, rhs);
  require(rel <= 1e-10, "LuSolver: residual " + std::to_string(rel) +
                            " exceeds 1e-10, matrix numerically singular or ill-conditioned");
  return x;
}

MatC solve_direct(const ImpedanceMatrix& zmat, const MatC& rhs) {
  require(zmat.z.rows() == rhs.rows(), "solve_direct: dimension mismatch");
  LuSolver lu(zmat.z);
  return lu.solve(rhs);
}

VecC solve_cgnr(const std::function<VecC(const VecC&)>& matvec,
                const std::function<VecC(const VecC&)>& matvec_adj, const VecC& rhs, double tol,
                int max_iter) {
  VecC x = VecC::Zero(rhs.size());
  VecC r = rhs;
  VecC z = matvec_adj(r);
  VecC p = z;
  double zz = z.squaredNorm();
  double rhs_norm = rhs.norm();
  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= tol * rhs_norm) break;
    VecC ap = matvec(p);
    double denom = ap.squaredNorm();
    if (denom == 0.0) break;
    cdouble alpha = zz / denom;
    x += alpha * p;
    r -= alpha * ap;
    z = matvec_adj(r);
    double zz_new = z.squaredNorm();
    p = z + (zz_new / zz) * p;
    zz = zz_new;
  }
  return x;
}

NearFields radiate_near(const VecC& currents, const ImpedanceMatrix& zmat,
                        const std::vector<Vec3>& points, FieldRegion region) {
  const TriangleMesh& mesh = *zmat.mesh;
  const RwgBasis& basis = *zmat.basis;
  int n = basis.size();
  bool pm = zmat.formulation == Formulation::PMCHWT;
  require(currents.size() == (pm ? 2 * n : n), "radiate_near: current vector size mismatch");
  require(pm || region == FieldRegion::Exterior, "radiate_near: EFIE has no interior region");

  cdouble kw = region == FieldRegion::Exterior ? cdouble(zmat.k0) : zmat.k_d;
  cdouble zw = region == FieldRegion::Exterior ? cdouble(z0_free) : zmat.z_d;
  // interior representation carries (-J, -M)
  double side = region == FieldRegion::Exterior ? 1.0 : -1.0;

  AssemblyPlan plan = build_plan(mesh, basis);
  NearFields out;
  out.e.assign(points.size(), CVec3::Zero());
  out.h.assign(points.size(), CVec3::Zero());

  for (size_t ip = 0; ip < points.size(); ++ip) {
    const Vec3& r = points[ip];
    CVec3 e_j = CVec3::Zero(), e_m = CVec3::Zero();
    CVec3 h_j = CVec3::Zero(), h_m = CVec3::Zero();
    for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
      const TriData& td = plan.tris[t];
      double dist = (r - td.centroid).norm();
      if (dist < td.diameter) {
        double plane_dist = std::abs(td.n.dot(r - td.v[0]));
        require(plane_dist > 0.01 * td.diameter,
                "radiate_near: observation point on or too close to the surface");
      }
      bool near = dist < 2.0 * td.diameter;
      InnerIntegrals in = near ? inner_near(kw, r, td, plan.q12[t])
                               : inner_far(kw, r, plan.q6[t]);
      for (const auto& lf : plan.fns[t]) {
        cdouble ie = currents[lf.index];
        // magnetic unknown stored as j I^m, so J^m = -j (j I^m)
        cdouble im = pm ? -jc * currents[n + lf.index] : cdouble(0);
        CVec3 vec_part = lf.coef * (in.tv - lf.free_v.cast<cdouble>() * in.t0);
        CVec3 grad_part = lf.div / (kw * kw) * in.gg;
        CVec3 rot_part = lf.coef * ccross(in.gg, (r - lf.free_v).cast<cdouble>());
        e_j += ie * (vec_part + grad_part);
        h_j += ie * rot_part;
        e_m += im * rot_part;
        h_m += im * (vec_part + grad_part);
      }
    }
    out.e[ip] = side * (-jc * kw * zw * e_j - e_m);
    out.h[ip] = side * (h_j - jc * kw / zw * h_m);
  }
  return out;
}

}  // namespace hem
