#include "hem/tmatrix.hpp"

#include <fstream>

#include "hem/iobin.hpp"

namespace hem {

namespace {

// Tangential radial factors of a region's regular/outgoing waves at kr = z:
// TE rows use (e: z_l, h: (z z_l)'/z), TM rows swap them.
struct ModeFactors {
  cdouble e_reg, e_out, h_reg, h_out;
};

ModeFactors mode_factors(int tau, int l, cdouble k, cdouble z_imp, double radius) {
  RadialTable reg = radial_table(l, 1, k * radius);
  RadialTable out = radial_table(l, 4, k * radius);
  cdouble ksz = k * std::sqrt(z_imp);
  cdouble koz = jc * k / std::sqrt(z_imp);
  ModeFactors f;
  if (tau == 1) {
    f.e_reg = ksz * reg.rad1[l];
    f.e_out = ksz * out.rad1[l];
    f.h_reg = koz * reg.rad2[l];
    f.h_out = koz * out.rad2[l];
  } else {
    f.e_reg = ksz * reg.rad2[l];
    f.e_out = ksz * out.rad2[l];
    f.h_reg = koz * reg.rad1[l];
    f.h_out = koz * out.rad1[l];
  }
  return f;
}

void check_body(const SphericalBody& body) {
  require(!body.radii.empty() && body.radii.size() == body.media.size(),
          "spherical body: radii/media size mismatch");
  for (size_t i = 0; i + 1 < body.radii.size(); ++i)
    require(body.radii[i] < body.radii[i + 1], "spherical body: layers overlap");
  require(body.radii[0] > 0, "spherical body: nonpositive radius");
  for (size_t i = 1; i < body.media.size(); ++i)
    require(body.media[i].kind != Material::Kind::PEC,
            "spherical body: PEC allowed only as the core");
}

bool is_free_space(const Material& m) {
  return m.kind == Material::Kind::Penetrable && std::abs(m.eps_r - 1.0) < 1e-12 &&
         std::abs(m.mu_r - 1.0) < 1e-12;
}

// Per-mode interface solve. Unknowns ordered: [a_core?] [c_i d_i per layer]
// [f_e]; the core term is the cavity regular coefficient when cavity_mode,
// or the regular coefficient of a penetrable core, or absent for PEC.
// Inputs enter as right-hand sides: cavity outgoing f (cavity_mode only) and
// exterior regular a_e. Returns per input column the full unknown vector.
struct ModeSolve {
  cdouble a_from_f = 0, a_from_ae = 0;    // cavity regular response
  cdouble fe_from_f = 0, fe_from_ae = 0;  // exterior outgoing response
};

ModeSolve solve_mode(const SphericalBody& body, double k0, int tau, int l, bool cavity_mode) {
  int nlayer = (int)body.radii.size();
  bool pec_core = body.media[0].kind == Material::Kind::PEC;
  require(!(cavity_mode && pec_core), "tmatrix: cavity requires a penetrable core region");
  if (cavity_mode)
    require(is_free_space(body.media[0]), "tmatrix_analytic_sphere: core region must be free space");

  // region i < nlayer lies below radii[i]; region nlayer is exterior free space
  auto region_k = [&](int i) { return i == nlayer ? cdouble(k0) : body.media[i].k_d(k0); };
  auto region_z = [&](int i) { return i == nlayer ? cdouble(z0_free) : body.media[i].z_d(); };

  // one term = one radial basis function of one region with either an unknown
  // coefficient (column index) or a known input (rhs column)
  struct Term {
    int region;
    bool outgoing;
    int unknown = -1;  // column in A, or -1 if known input
    int input = -1;    // rhs column (0: cavity f, 1: exterior a_e)
  };
  std::vector<Term> terms;
  int nun = 0;
  int idx_core_reg = -1, idx_fe = -1;
  if (!pec_core) {
    idx_core_reg = nun++;
    terms.push_back({0, false, idx_core_reg, -1});
    if (cavity_mode) terms.push_back({0, true, -1, 0});
  }
  for (int i = 1; i < nlayer; ++i) {
    terms.push_back({i, false, nun++, -1});
    terms.push_back({i, true, nun++, -1});
  }
  terms.push_back({nlayer, false, -1, 1});
  idx_fe = nun++;
  terms.push_back({nlayer, true, idx_fe, -1});

  int nrows = 2 * nlayer - (pec_core ? 1 : 0);
  MatC a = MatC::Zero(nrows, nun);
  MatC rhs = MatC::Zero(nrows, 2);

  int row = 0;
  for (int i = 0; i < nlayer; ++i) {
    double rad = body.radii[i];
    bool pec_bc = (i == 0 && pec_core);
    for (int comp = 0; comp < 2; ++comp) {  // 0: E_tan, 1: H_tan
      if (pec_bc && comp == 1) continue;    // only E_tan = 0 on the conductor
      for (const Term& t : terms) {
        if (t.region != i && t.region != i + 1) continue;
        if (pec_bc && t.region != i + 1) continue;
        ModeFactors f = mode_factors(tau, l, region_k(t.region), region_z(t.region), rad);
        cdouble val = comp == 0 ? (t.outgoing ? f.e_out : f.e_reg)
                                : (t.outgoing ? f.h_out : f.h_reg);
        double side = (t.region == i || pec_bc) ? 1.0 : -1.0;  // inner minus outer
        if (t.unknown >= 0)
          a(row, t.unknown) += side * val;
        else
          rhs(row, t.input) -= side * val;
      }
      ++row;
    }
  }

  // equilibrate: h_l and j_l factors differ by many orders at high degree
  VecR col_scale(nun), row_scale(nrows);
  for (int c = 0; c < nun; ++c) {
    double s = a.col(c).cwiseAbs().maxCoeff();
    col_scale[c] = s > 0 ? 1.0 / s : 1.0;
    a.col(c) *= col_scale[c];
  }
  for (int r2 = 0; r2 < nrows; ++r2) {
    double s = a.row(r2).cwiseAbs().maxCoeff();
    row_scale[r2] = s > 0 ? 1.0 / s : 1.0;
    a.row(r2) *= row_scale[r2];
    rhs.row(r2) *= row_scale[r2];
  }
  Eigen::PartialPivLU<MatC> lu(a);
  MatC x = lu.solve(rhs);
  require((a * x - rhs).norm() <= 1e-8 * (rhs.norm() + 1e-300),
          "tmatrix: interface system singular");
  for (int c = 0; c < nun; ++c) x.row(c) *= col_scale[c];

  ModeSolve out;
  if (cavity_mode) {
    out.a_from_f = x(idx_core_reg, 0);
    out.a_from_ae = x(idx_core_reg, 1);
  }
  out.fe_from_f = x(idx_fe, 0);
  out.fe_from_ae = x(idx_fe, 1);
  return out;
}

}  // namespace

TMatrixBlocks tmatrix_analytic_sphere(const SphericalBody& body, double k0, int l_int, int l_ext) {
  check_body(body);
  TMatrixBlocks b;
  b.l_int = l_int;
  b.l_ext = l_ext;
  b.k0 = k0;
  int ni = num_waves(l_int), ne = num_waves(l_ext);
  b.t = MatC::Zero(ne, ne);
  b.psi = MatC::Zero(ne, ni);
  b.psi_t = MatC::Zero(ni, ne);
  b.rho = MatC::Zero(ni, ni);
  int lb = std::max(l_int, l_ext);
  for (int tau = 1; tau <= 2; ++tau)
    for (int l = 1; l <= lb; ++l) {
      ModeSolve ms = solve_mode(body, k0, tau, l, /*cavity_mode=*/true);
      for (int m = -l; m <= l; ++m) {
        WaveIndex wi{tau, l, m};
        int si = l <= l_int ? wave_sigma(wi) : -1;
        int se = l <= l_ext ? wave_sigma(wi) : -1;
        if (se >= 0) b.t(se, se) = ms.fe_from_ae;
        if (si >= 0) b.rho(si, si) = ms.a_from_f;
        if (se >= 0 && si >= 0) {
          b.psi(se, si) = ms.fe_from_f;
          b.psi_t(si, se) = ms.a_from_ae;
        }
      }
    }
  return b;
}

VecC mie_scattering_diag(const SphericalBody& body, double k0, int l_max) {
  check_body(body);
  VecC diag = VecC::Zero(num_waves(l_max));
  for (int tau = 1; tau <= 2; ++tau)
    for (int l = 1; l <= l_max; ++l) {
      ModeSolve ms = solve_mode(body, k0, tau, l, /*cavity_mode=*/false);
      for (int m = -l; m <= l; ++m) diag[wave_sigma({tau, l, m})] = ms.fe_from_ae;
    }
  return diag;
}

TMatrixBlocks tmatrix_from_mom(const ImpedanceMatrix& zmat, const CouplingMatrix& u1,
                               const CouplingMatrix& u4) {
  require(u1.p == 1 && u4.p == 4, "tmatrix_from_mom: pass (U1, U4)");
  require(u1.u.cols() == zmat.z.rows() && u4.u.cols() == zmat.z.rows(),
          "tmatrix_from_mom: dimension mismatch");
  TMatrixBlocks b;
  b.l_ext = u1.l_max;
  b.l_int = u4.l_max;
  b.k0 = zmat.k0;
  LuSolver lu(zmat.z);
  MatC zi_u1t = lu.solve(u1.u.transpose());
  MatC zi_u4t = lu.solve(u4.u.transpose());
  b.t = -u1.u * zi_u1t;
  b.psi = -u1.u * zi_u4t;
  b.psi_t = -u4.u * zi_u1t;
  b.rho = -u4.u * zi_u4t;
  int ni = num_waves(b.l_int), ne = num_waves(b.l_ext);
  for (int i = 0; i < std::min(ni, ne); ++i) {
    b.psi(i, i) += 1.0;
    b.psi_t(i, i) += 1.0;
  }
  return b;
}

Gsm hybrid_gsm_t(const Gsm& gsm, const TMatrixBlocks& blocks) {
  int ni = num_waves(blocks.l_int), ne = num_waves(blocks.l_ext);
  require(gsm.n_wavefuncs() == ni, "hybrid_gsm_t: interior wave count mismatch");
  MatC shalf = 0.5 * (gsm.s - MatC::Identity(ni, ni));
  MatC m = MatC::Identity(ni, ni) - shalf * blocks.rho;
  Eigen::PartialPivLU<MatC> lu(m);
  MatC minv_t = lu.solve(gsm.t);            // M^-1 T
  MatC minv_spsit = lu.solve(2.0 * shalf * blocks.psi_t);  // M^-1 (S-1) psi_t

  Gsm out;
  out.l_max = blocks.l_ext;
  out.frequency = gsm.frequency;
  out.gamma = gsm.gamma + 0.5 * gsm.r * blocks.rho * minv_t;
  out.r = gsm.r * (blocks.psi_t + 0.5 * blocks.rho * minv_spsit);
  out.t = blocks.psi * minv_t;
  out.s = MatC::Identity(ne, ne) + 2.0 * blocks.t + blocks.psi * minv_spsit;
  return out;
}

void save_tmatrix(const TMatrixBlocks& blocks, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "save_tmatrix: cannot open " + path);
  out.write("HTM1", 4);
  int64_t li = blocks.l_int, le = blocks.l_ext;
  out.write(reinterpret_cast<const char*>(&li), 8);
  out.write(reinterpret_cast<const char*>(&le), 8);
  out.write(reinterpret_cast<const char*>(&blocks.k0), 8);
  auto wr = [&out](const MatC& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        double buf[2] = {m(i, j).real(), m(i, j).imag()};
        out.write(reinterpret_cast<const char*>(buf), 16);
      }
  };
  wr(blocks.t);
  wr(blocks.psi);
  wr(blocks.psi_t);
  wr(blocks.rho);
  require(out.good(), "save_tmatrix: write failed");
}

TMatrixBlocks load_tmatrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "load_tmatrix: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  require(in.good() && std::string(magic, 4) == "HTM1", "load_tmatrix: bad magic");
  int64_t li, le;
  TMatrixBlocks b;
  in.read(reinterpret_cast<char*>(&li), 8);
  in.read(reinterpret_cast<char*>(&le), 8);
  in.read(reinterpret_cast<char*>(&b.k0), 8);
  b.l_int = (int)li;
  b.l_ext = (int)le;
  int ni = num_waves(b.l_int), ne = num_waves(b.l_ext);
  auto rd = [&in](MatC& m, int r, int c) {
    m.resize(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        double buf[2];
        in.read(reinterpret_cast<char*>(buf), 16);
        m(i, j) = cdouble(buf[0], buf[1]);
      }
  };
  rd(b.t, ne, ne);
  rd(b.psi, ne, ni);
  rd(b.psi_t, ni, ne);
  rd(b.rho, ni, ni);
  require(in.good(), "load_tmatrix: truncated file");
  return b;
}

}  // namespace hem
