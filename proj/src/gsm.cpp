#include "hem/gsm.hpp"

#include <fstream>

#include "hem/coupling.hpp"
#include "hem/tmatrix.hpp"

namespace hem {

Gsm Gsm::portless(const MatC& s, int l_max, double frequency) {
  Gsm g;
  g.l_max = l_max;
  g.frequency = frequency;
  g.s = s;
  g.gamma = MatC::Zero(0, 0);
  g.r = MatC::Zero(0, s.rows());
  g.t = MatC::Zero(s.rows(), 0);
  return g;
}

GsmApplyResult gsm_apply(const Gsm& gsm, const VecC& v, const CoeffVector& a) {
  int nw = gsm.n_wavefuncs();
  require(v.size() == gsm.n_ports(), "gsm_apply: port dimension mismatch");
  require(a.values.size() == nw, "gsm_apply: wave dimension mismatch");
  GsmApplyResult out;
  out.f.kind = CoeffKind::Outgoing;
  out.f.l_max = gsm.l_max;
  out.f.values = 0.5 * (gsm.s * a.values - a.values);
  if (gsm.n_ports() > 0) {
    out.w = gsm.gamma * v + 0.5 * (gsm.r * a.values);
    out.f.values += gsm.t * v;
  } else {
    out.w = VecC::Zero(0);
  }
  return out;
}

Gsm gsm_from_mie_sphere(const SphericalBody& body, double k0, int l_max) {
  VecC tdiag = mie_scattering_diag(body, k0, l_max);
  MatC s = MatC::Identity(num_waves(l_max), num_waves(l_max));
  s.diagonal() += 2.0 * tdiag;
  return Gsm::portless(s, l_max, k0 * c0 / (2.0 * pi));
}

Gsm gsm_from_mom_antenna(const TriangleMesh& mesh, const RwgBasis& basis, const DeltaGapPort& port,
                         double frequency, int l_max) {
  require(mesh.material.kind == Material::Kind::PEC, "gsm_from_mom_antenna: PEC antenna required");
  require(port.edge >= 0 && port.edge < basis.size(), "gsm_from_mom_antenna: bad port edge");
  int n = basis.size();
  int nw = num_waves(l_max);
  double k0 = 2.0 * pi * frequency / c0;
  double lp = basis.functions[port.edge].length;
  double sqrt_zref = std::sqrt(port.z_ref);

  ImpedanceMatrix za = assemble_efie(mesh, basis, frequency);
  MatC zl = za.z;
  zl(port.edge, port.edge) += port.z_ref * lp * lp;

  CouplingMatrix u1 = assemble_coupling(mesh, basis, AntennaFrame{}, k0, l_max, 1,
                                        Formulation::EFIE);

  // right-hand sides: port drive (Thevenin source 2 sqrt(zref) per unit v),
  // then one regular-wave incidence per wave index
  MatC rhs(n, 1 + nw);
  rhs.setZero();
  rhs(port.edge, 0) = 2.0 * sqrt_zref * lp;
  rhs.rightCols(nw) = u1.u.transpose();

  LuSolver lu(zl);
  MatC x = lu.solve(rhs);

  Gsm g;
  g.l_max = l_max;
  g.frequency = frequency;
  g.gamma = MatC::Zero(1, 1);
  g.gamma(0, 0) = 1.0 - sqrt_zref * lp * x(port.edge, 0);
  g.t = -u1.u * x.col(0);
  // receive row by reciprocity of the loaded symmetric system
  g.r = g.t.transpose();
  g.s = MatC::Identity(nw, nw) - 2.0 * (u1.u * x.rightCols(nw));
  return g;
}

Gsm gsm_transform(const Gsm& gsm, double delta, double alpha, double beta, double gamma) {
  double k0 = 2.0 * pi * gsm.frequency / c0;
  WignerTransform wt = wigner_transform(delta, alpha, beta, gamma, k0, gsm.l_max);
  Gsm out = gsm;
  out.r = gsm.r * wt.t;
  out.t = wt.t.transpose() * gsm.t;
  out.s = wt.t.transpose() * gsm.s * wt.t;
  return out;
}

void save_gsm(const Gsm& gsm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "save_gsm: cannot open " + path);
  out.write("HGSM1", 5);
  int64_t np = gsm.n_ports(), lm = gsm.l_max;
  out.write(reinterpret_cast<const char*>(&np), 8);
  out.write(reinterpret_cast<const char*>(&lm), 8);
  out.write(reinterpret_cast<const char*>(&gsm.frequency), 8);
  auto wr = [&out](const MatC& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        double buf[2] = {m(i, j).real(), m(i, j).imag()};
        out.write(reinterpret_cast<const char*>(buf), 16);
      }
  };
  wr(gsm.gamma);
  wr(gsm.r);
  wr(gsm.t);
  wr(gsm.s);
  require(out.good(), "save_gsm: write failed");
}

Gsm load_gsm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "load_gsm: cannot open " + path);
  char magic[5];
  in.read(magic, 5);
  require(in.good() && std::string(magic, 5) == "HGSM1", "load_gsm: bad magic in " + path);
  int64_t np, lm;
  Gsm g;
  in.read(reinterpret_cast<char*>(&np), 8);
  in.read(reinterpret_cast<char*>(&lm), 8);
  in.read(reinterpret_cast<char*>(&g.frequency), 8);
  g.l_max = (int)lm;
  int nw = num_waves(g.l_max);
  auto rd = [&in](MatC& m, int r, int c) {
    m.resize(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        double buf[2];
        in.read(reinterpret_cast<char*>(buf), 16);
        m(i, j) = cdouble(buf[0], buf[1]);
      }
  };
  rd(g.gamma, np, np);
  rd(g.r, np, nw);
  rd(g.t, nw, np);
  rd(g.s, nw, nw);
  require(in.good(), "load_gsm: truncated file " + path);
  return g;
}

}  // namespace hem
