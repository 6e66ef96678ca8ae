#pragma once

#include "hem/mom.hpp"
#include "hem/waves.hpp"
#include "hem/wigner.hpp"

namespace hem {

struct PortWaves {
  VecC v;  // incident port modes, power waves, sqrt(W)
  VecC w;  // outgoing port modes
};

// Generalized scattering matrix of an antenna:
//   [w; f] = [[Gamma, R/2], [T, (S-1)/2]] [v; a]
// Port S-parameters Gamma, receiving R, transmitting T, scattering S, over
// the power-normalized spherical waves of degree <= l_max.
struct Gsm {
  MatC gamma;  // n_port x n_port
  MatC r;      // n_port x n_wave
  MatC t;      // n_wave x n_port
  MatC s;      // n_wave x n_wave
  int l_max = 0;
  double frequency = 0.0;

  int n_ports() const { return (int)gamma.rows(); }
  int n_wavefuncs() const { return (int)s.rows(); }

  static Gsm portless(const MatC& s, int l_max, double frequency);
};

struct GsmApplyResult {
  VecC w;
  CoeffVector f;
};
GsmApplyResult gsm_apply(const Gsm& gsm, const VecC& v, const CoeffVector& a);

struct SphericalBody;  // tmatrix.hpp

// Portless GSM of a (layered) sphere: S = 1 + 2 T_mie, diagonal.
Gsm gsm_from_mie_sphere(const SphericalBody& body, double k0, int l_max);

// Single delta-gap port on a PEC antenna referenced to z_ref ohms.
struct DeltaGapPort {
  int edge = -1;       // RWG index of the gap edge
  double z_ref = 50.0;
};

// Characterizes a PEC antenna by EFIE solves about the local frame origin:
// T from the port-driven solve, S columns from regular-wave incidence with
// the port terminated in z_ref, Gamma from the port current, R = T^t by
// reciprocity of the loaded (complex-symmetric) system.
Gsm gsm_from_mom_antenna(const TriangleMesh& mesh, const RwgBasis& basis, const DeltaGapPort& port,
                         double frequency, int l_max);

// Repositioned antenna: pose r_global = Rz(a) Ry(b) Rz(g) (r_local + d zhat).
// Port blocks keep their meaning; wave blocks conjugated by the Wigner
// operator per S' = [[1,0],[0,T^t]] S_hat [[1,0],[0,T]].
Gsm gsm_transform(const Gsm& gsm, double delta, double alpha, double beta, double gamma);

void save_gsm(const Gsm& gsm, const std::string& path);
Gsm load_gsm(const std::string& path);

}  // namespace hem
