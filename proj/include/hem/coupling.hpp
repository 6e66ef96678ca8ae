#pragma once

#include "hem/mom.hpp"
#include "hem/waves.hpp"

namespace hem {

// Antenna local frame: r_local = rot^T (r_global - origin).
struct AntennaFrame {
  Vec3 origin = Vec3::Zero();
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
};

// Projection of spherical waves onto the RWG tests over the structure:
//   U^(p)[a,n]    = k0 sqrt(Z0) <u_a^(p), psi_n>
//   Ubar^(p)[a,n] = k0/sqrt(Z0) <u_bar(a)^(p), psi_n>
// and U_p = [U^(p), -Ubar^(p)] over the PMCHWT layout [I_e; j I_m]
// (EFIE keeps only the electric block).
struct CouplingMatrix {
  MatC u;  // n_wave x n_unknowns
  int p = 4;
  int l_max = 0;
  AntennaFrame frame;
};

// For p = 4 the expansion is generated about the antenna origin; the mesh
// must stay outside the antenna sphere (pass its radius; 0 skips the check).
CouplingMatrix assemble_coupling(const TriangleMesh& mesh, const RwgBasis& basis,
                                 const AntennaFrame& frame, double k0, int l_max, int p,
                                 Formulation formulation, double antenna_radius = 0.0);

}  // namespace hem
