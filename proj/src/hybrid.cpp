#include "hem/hybrid.hpp"

#include <filesystem>

#include "hem/iobin.hpp"

namespace hem {

namespace {

bool s_is_identity(const MatC& s) {
  return (s - MatC::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() == 0.0;
}

void verify_ztilde_entries(const HybridSystem& sys) {
  int n = (int)sys.ztilde.rows();
  uint64_t state = 12345;
  auto next = [&state](int mod) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (int)((state >> 33) % mod);
  };
  double scale = sys.ztilde.cwiseAbs().maxCoeff();
  for (int s = 0; s < 100; ++s) {
    int i = next(n), j = next(n);
    cdouble triple = sys.u4.u.col(i).transpose() * sys.shalf * sys.u4.u.col(j);
    cdouble expect = sys.zmat->z(i, j) + triple;
    require(std::abs(sys.ztilde(i, j) - expect) <= 1e-12 * scale,
            "build_hybrid: Z~ entry check failed");
  }
}

}  // namespace

uint64_t hybrid_cache_key(const ImpedanceMatrix& zmat, const CouplingMatrix& u4) {
  std::vector<std::byte> bytes = zmat.mesh->canonical_bytes();
  auto push_d = [&bytes](double x) {
    const std::byte* p = reinterpret_cast<const std::byte*>(&x);
    bytes.insert(bytes.end(), p, p + 8);
  };
  push_d(zmat.frequency);
  push_d((double)u4.l_max);
  push_d((double)(zmat.formulation == Formulation::PMCHWT ? 1 : 0));
  for (int i = 0; i < 3; ++i) push_d(u4.frame.origin[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) push_d(u4.frame.rot(i, j));
  return fnv1a(bytes);
}

HybridSystem build_hybrid(const ImpedanceMatrix& zmat, const CouplingMatrix& u4, const Gsm& gsm,
                          const HybridOptions& opt) {
  require(u4.p == 4, "build_hybrid: U4 coupling matrix required");
  require(u4.u.cols() == zmat.z.rows(), "build_hybrid: U4/Z dimension mismatch");
  require(gsm.n_wavefuncs() == u4.u.rows(), "build_hybrid: GSM/U4 wave dimension mismatch");

  HybridSystem sys;
  sys.zmat = &zmat;
  sys.u4 = u4;
  sys.gsm = gsm;
  int nw = gsm.n_wavefuncs();
  sys.shalf = 0.5 * (gsm.s - MatC::Identity(nw, nw));
  sys.identity_s = s_is_identity(gsm.s);

  if (opt.build_smw) {
    bool loaded = false;
    std::string dir;
    if (!opt.cache_dir.empty()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%016llx",
                    (unsigned long long)hybrid_cache_key(zmat, u4));
      dir = opt.cache_dir + "/" + buf;
      if (file_exists(dir + "/zlu.bin") && file_exists(dir + "/zpiv.bin") &&
          file_exists(dir + "/g.bin")) {
        sys.lu_z.load_factors(zmat.z, dir + "/zlu.bin", dir + "/zpiv.bin");
        sys.g = load_matrix(dir + "/g.bin");
        loaded = sys.g.rows() == nw;
        sys.cache_hit = loaded;
      }
    }
    if (!loaded) {
      sys.lu_z.factor(zmat.z);
      sys.g = sys.u4.u * sys.lu_z.solve(sys.u4.u.transpose());
      if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        sys.lu_z.save_factors(dir + "/zlu.bin", dir + "/zpiv.bin");
        save_matrix(sys.g, dir + "/g.bin");
      }
    }
    sys.m = MatC::Identity(nw, nw) + sys.g * sys.shalf;
    sys.lu_m.factor(sys.m);
    sys.have_smw = true;
  }

  if (opt.build_direct) {
    if (sys.identity_s) {
      sys.ztilde = zmat.z;  // exact degeneration to the bare structure system
    } else {
      sys.ztilde = zmat.z + sys.u4.u.transpose() * sys.shalf * sys.u4.u;
    }
    sys.lu_ztilde.factor(sys.ztilde);
    sys.have_direct = true;
    if (opt.verify_entries && !sys.identity_s) verify_ztilde_entries(sys);
  }
  return sys;
}

void hybrid_set_gsm(HybridSystem& sys, const Gsm& gsm, bool refresh_direct) {
  require(gsm.n_wavefuncs() == sys.u4.u.rows(), "hybrid_set_gsm: wave dimension mismatch");
  int nw = gsm.n_wavefuncs();
  sys.gsm = gsm;
  sys.shalf = 0.5 * (gsm.s - MatC::Identity(nw, nw));
  sys.identity_s = s_is_identity(gsm.s);
  if (sys.have_smw) {
    sys.m = MatC::Identity(nw, nw) + sys.g * sys.shalf;
    sys.lu_m.factor(sys.m);
  }
  if (refresh_direct) {
    require(sys.zmat, "hybrid_set_gsm: no base matrix");
    sys.ztilde = sys.identity_s
                     ? sys.zmat->z
                     : MatC(sys.zmat->z + sys.u4.u.transpose() * sys.shalf * sys.u4.u);
    sys.lu_ztilde.factor(sys.ztilde);
    sys.have_direct = true;
  } else {
    sys.have_direct = false;
  }
}

namespace {

VecC hybrid_rhs(const HybridSystem& sys, const HybridExcitation& exc) {
  int n = (int)sys.zmat->z.rows();
  VecC rhs = VecC::Zero(n);
  if (exc.v_inc.size()) {
    require(exc.v_inc.size() == n, "solve_hybrid: excitation size mismatch");
    rhs = exc.v_inc;
  }
  if (exc.a_inc.values.size() && !sys.identity_s)
    rhs += sys.u4.u.transpose() * (sys.shalf * exc.a_inc.values);
  if (exc.v.size()) {
    require(exc.v.size() == sys.gsm.n_ports(), "solve_hybrid: port drive size mismatch");
    rhs += sys.u4.u.transpose() * (sys.gsm.t * exc.v);
  }
  return rhs;
}

HybridSolution finish_solution(const HybridSystem& sys, const HybridExcitation& exc, VecC&& i) {
  HybridSolution sol;
  sol.currents = std::move(i);
  int nw = sys.gsm.n_wavefuncs();
  sol.a_total.kind = CoeffKind::Incoming;
  sol.a_total.l_max = sys.gsm.l_max;
  sol.a_total.values = -(sys.u4.u * sol.currents);
  if (exc.a_inc.values.size()) sol.a_total.values += exc.a_inc.values;
  sol.f.kind = CoeffKind::Outgoing;
  sol.f.l_max = sys.gsm.l_max;
  sol.f.values = sys.shalf * sol.a_total.values;
  if (sys.gsm.n_ports() > 0) {
    VecC v = exc.v.size() ? exc.v : VecC::Zero(sys.gsm.n_ports());
    sol.f.values += sys.gsm.t * v;
    sol.w = sys.gsm.gamma * v + 0.5 * (sys.gsm.r * sol.a_total.values);
  } else {
    sol.w = VecC::Zero(0);
  }
  (void)nw;
  return sol;
}

}  // namespace

HybridSolution solve_hybrid(const HybridSystem& sys, const HybridExcitation& exc) {
  if (!sys.have_direct) {
    require(sys.have_smw, "solve_hybrid: no factorization built");
    return smw_solve(sys, exc);
  }
  VecC rhs = hybrid_rhs(sys, exc);
  return finish_solution(sys, exc, sys.lu_ztilde.solve(rhs));
}

HybridSolution smw_solve(const HybridSystem& sys, const HybridExcitation& exc) {
  require(sys.have_smw, "smw_solve: cached factors missing");
  VecC rhs = hybrid_rhs(sys, exc);
  VecC y = sys.lu_z.solve(rhs);
  if (!sys.identity_s) {
    VecC correction = sys.u4.u.transpose() * (sys.shalf * sys.lu_m.solve(sys.u4.u * y));
    y -= sys.lu_z.solve(correction);
  }
  return finish_solution(sys, exc, std::move(y));
}

MatC effective_sparams(const HybridSystem& sys) {
  require(sys.gsm.n_ports() > 0, "effective_sparams: GSM has no ports");
  if (sys.have_smw) {
    // U4 Z~^-1 U4^t = G - G (S-1)/2 M^-1 G, all n_wave-sized
    MatC y = sys.g - sys.g * (sys.shalf * sys.lu_m.solve(sys.g));
    return sys.gsm.gamma - 0.5 * sys.gsm.r * y * sys.gsm.t;
  }
  require(sys.have_direct, "effective_sparams: no factorization built");
  MatC x = sys.lu_ztilde.solve(sys.u4.u.transpose() * sys.gsm.t);
  return sys.gsm.gamma - 0.5 * sys.gsm.r * (sys.u4.u * x);
}

}  // namespace hem
