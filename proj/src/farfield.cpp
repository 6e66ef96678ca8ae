#include "hem/farfield.hpp"

#include <cmath>
#include <fstream>

#include "hem/quadrature.hpp"

namespace hem {

Vec3 PatternCut::rhat(int i) const {
  double st = std::sin(theta[i]), ct = std::cos(theta[i]);
  return Vec3(st * std::cos(phi[i]), st * std::sin(phi[i]), ct);
}

namespace {

void basis_vectors(double theta, double phi, Vec3& eth, Vec3& eph) {
  double st = std::sin(theta), ct = std::cos(theta);
  eth = Vec3(ct * std::cos(phi), ct * std::sin(phi), -st);
  eph = Vec3(-std::sin(phi), std::cos(phi), 0.0);
}

PatternCut empty_cut(std::vector<double> theta, std::vector<double> phi) {
  PatternCut c;
  c.theta = std::move(theta);
  c.phi = std::move(phi);
  c.e_theta = VecC::Zero(c.theta.size());
  c.e_phi = VecC::Zero(c.theta.size());
  return c;
}

// tiny pole offset keeps the spherical basis well defined on axis
constexpr double pole_eps = 1e-7;

}  // namespace

PatternCut make_phi_cut(double phi_deg, double step_deg) {
  std::vector<double> th, ph;
  double phi0 = phi_deg * pi / 180.0;
  int n = (int)std::round(360.0 / step_deg);
  for (int i = 0; i < n; ++i) {
    double a = i * step_deg * pi / 180.0;  // polar sweep angle
    double t = a <= pi ? a : 2 * pi - a;
    double p = a <= pi ? phi0 : phi0 + pi;
    t = std::clamp(t, pole_eps, pi - pole_eps);
    th.push_back(t);
    ph.push_back(p);
  }
  return empty_cut(th, ph);
}

PatternCut make_half_cut(double phi_deg, double step_deg) {
  std::vector<double> th, ph;
  double phi0 = phi_deg * pi / 180.0;
  int n = (int)std::round(180.0 / step_deg);
  for (int i = 0; i <= n; ++i) {
    th.push_back(std::clamp(i * step_deg * pi / 180.0, pole_eps, pi - pole_eps));
    ph.push_back(phi0);
  }
  return empty_cut(th, ph);
}

void far_from_currents(const VecC& currents, const ImpedanceMatrix& zmat, PatternCut& cut) {
  far_from_currents(currents, zmat, cut, false);
}

void far_from_currents(const VecC& currents, const ImpedanceMatrix& zmat, PatternCut& cut,
                       bool accumulate) {
  const TriangleMesh& mesh = *zmat.mesh;
  const RwgBasis& basis = *zmat.basis;
  int n = basis.size();
  bool pm = zmat.formulation == Formulation::PMCHWT;
  require(currents.size() == (pm ? 2 * n : n), "far_from_currents: current size mismatch");
  if (!accumulate) {
    cut.e_theta.setZero(cut.size());
    cut.e_phi.setZero(cut.size());
  }
  double k0 = zmat.k0;
  const TriangleRule& rule = triangle_rule(6);

  for (int i = 0; i < cut.size(); ++i) {
    Vec3 rh = cut.rhat(i);
    CVec3 nj = CVec3::Zero(), nm = CVec3::Zero();  // radiation integrals of J and M
    for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
      double area = mesh.area(t);
      Vec3 v0 = mesh.tri_vertex(t, 0), v1 = mesh.tri_vertex(t, 1), v2 = mesh.tri_vertex(t, 2);
      for (const auto& qp : rule.pts) {
        Vec3 r = qp.b0 * v0 + qp.b1 * v1 + qp.b2 * v2;
        cdouble ph = qp.w * area * std::exp(jc * k0 * rh.dot(r));
        for (auto [nf, side] : basis.tri_functions[t]) {
          const RwgFunction& f = basis.functions[nf];
          Vec3 free_v = mesh.vertex(side > 0 ? f.free_plus : f.free_minus);
          CVec3 psi = (side * f.length / (2.0 * area) * (r - free_v)).cast<cdouble>();
          nj += currents[nf] * ph * psi;
          if (pm) nm += (-jc * currents[n + nf]) * ph * psi;  // J^m = -j (j I^m)
        }
      }
    }
    CVec3 f_vec = -jc * k0 * z0_free / (4.0 * pi) * (nj - rh.dot(nj) * rh.cast<cdouble>()) +
                  jc * k0 / (4.0 * pi) * ccross(rh.cast<cdouble>(), nm);
    Vec3 eth, eph;
    basis_vectors(cut.theta[i], cut.phi[i], eth, eph);
    cut.e_theta[i] += eth.cast<cdouble>().dot(f_vec);
    cut.e_phi[i] += eph.cast<cdouble>().dot(f_vec);
  }
}

void far_from_waves(const CoeffVector& f, const AntennaFrame& frame, double k0, PatternCut& cut,
                    bool accumulate) {
  require(f.kind == CoeffKind::Outgoing || f.kind == CoeffKind::ExteriorOut,
          "far_from_waves: outgoing coefficients required");
  if (!accumulate) {
    cut.e_theta.setZero(cut.size());
    cut.e_phi.setZero(cut.size());
  }
  for (int i = 0; i < cut.size(); ++i) {
    Vec3 rh = cut.rhat(i);
    Vec3 rl = frame.rot.transpose() * rh;
    std::vector<CVec3> rows = far_field_rows(f.l_max, rl);
    CVec3 fl = CVec3::Zero();
    for (int a = 0; a < f.values.size(); ++a) fl += f.values[a] * rows[a];
    CVec3 fg = frame.rot.cast<cdouble>() * fl * std::exp(jc * k0 * rh.dot(frame.origin));
    Vec3 eth, eph;
    basis_vectors(cut.theta[i], cut.phi[i], eth, eph);
    cut.e_theta[i] += eth.cast<cdouble>().dot(fg);
    cut.e_phi[i] += eph.cast<cdouble>().dot(fg);
  }
}

PatternCut superpose(const PatternCut& a, const PatternCut& b) {
  require(a.size() == b.size(), "superpose: cut size mismatch");
  for (int i = 0; i < a.size(); ++i)
    require(std::abs(a.theta[i] - b.theta[i]) < 1e-12 && std::abs(a.phi[i] - b.phi[i]) < 1e-12,
            "superpose: cut angle mismatch");
  PatternCut out = a;
  out.e_theta += b.e_theta;
  out.e_phi += b.e_phi;
  out.gain_dbi.resize(0);
  out.rcs_dbsm.resize(0);
  return out;
}

void compute_gain(PatternCut& cut, double reference_power_w) {
  require(reference_power_w > 0, "compute_gain: nonpositive reference power");
  cut.gain_dbi.resize(cut.size());
  for (int i = 0; i < cut.size(); ++i) {
    double u = (std::norm(cut.e_theta[i]) + std::norm(cut.e_phi[i])) / (2.0 * z0_free);
    cut.gain_dbi[i] = 10.0 * std::log10(std::max(4.0 * pi * u / reference_power_w, 1e-300));
  }
}

void compute_rcs(PatternCut& cut, double incident_amplitude) {
  require(incident_amplitude > 0, "compute_rcs: nonpositive incident amplitude");
  cut.rcs_dbsm.resize(cut.size());
  for (int i = 0; i < cut.size(); ++i) {
    double sigma = 4.0 * pi * (std::norm(cut.e_theta[i]) + std::norm(cut.e_phi[i])) /
                   (incident_amplitude * incident_amplitude);
    cut.rcs_dbsm[i] = 10.0 * std::log10(std::max(sigma, 1e-300));
  }
}

void save_pattern_csv(const PatternCut& cut, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "save_pattern_csv: cannot open " + path);
  out << "theta_deg,phi_deg,re_Etheta,im_Etheta,re_Ephi,im_Ephi,gain_dbi,rcs_dbsm\n";
  char buf[320];
  for (int i = 0; i < cut.size(); ++i) {
    double g = cut.gain_dbi.size() ? cut.gain_dbi[i] : 0.0;
    double s = cut.rcs_dbsm.size() ? cut.rcs_dbsm[i] : 0.0;
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.12e,%.12e,%.12e,%.12e,%.6f,%.6f\n",
                  cut.theta[i] * 180.0 / pi, cut.phi[i] * 180.0 / pi, cut.e_theta[i].real(),
                  cut.e_theta[i].imag(), cut.e_phi[i].real(), cut.e_phi[i].imag(), g, s);
    out << buf;
  }
}

PatternCut load_pattern_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "load_pattern_csv: cannot open " + path);
  std::string line;
  std::getline(in, line);
  PatternCut cut;
  std::vector<double> gain, rcs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double td, pd, ret, imt, rep, imp, g, s;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &td, &pd, &ret, &imt, &rep,
                    &imp, &g, &s) == 8) {
      cut.theta.push_back(td * pi / 180.0);
      cut.phi.push_back(pd * pi / 180.0);
      gain.push_back(g);
      rcs.push_back(s);
      cut.e_theta.conservativeResize(cut.theta.size());
      cut.e_phi.conservativeResize(cut.theta.size());
      cut.e_theta[cut.theta.size() - 1] = cdouble(ret, imt);
      cut.e_phi[cut.theta.size() - 1] = cdouble(rep, imp);
    }
  }
  cut.gain_dbi = Eigen::Map<VecR>(gain.data(), gain.size());
  cut.rcs_dbsm = Eigen::Map<VecR>(rcs.data(), rcs.size());
  return cut;
}

}  // namespace hem
