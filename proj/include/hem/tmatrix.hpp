#pragma once

#include "hem/coupling.hpp"
#include "hem/gsm.hpp"
#include "hem/mom.hpp"

namespace hem {

// Radially layered sphere: media[i] fills radii[i-1] < r < radii[i] (media[0]
// is the core region r < radii[0]); outside radii.back() is free space. A PEC
// entry is allowed only as the core.
struct SphericalBody {
  std::vector<double> radii;
  std::vector<Material> media;
};

// Bidirectional mapping between the waves inside the cavity (antenna side,
// truncation l_int) and outside the body (truncation l_ext):
//   [f_e; a] = [[t, psi], [psi_t, rho]] [a_e; f]
struct TMatrixBlocks {
  MatC t;      // l_ext x l_ext waves
  MatC psi;    // ext x int
  MatC psi_t;  // int x ext
  MatC rho;    // int x int
  int l_int = 0, l_ext = 0;
  double k0 = 0.0;
};

// Analytic blocks for a spherical shell whose core region is free space (the
// antenna cavity). Diagonal per (tau, l), solved mode-by-mode from the
// tangential matching conditions at every interface.
TMatrixBlocks tmatrix_analytic_sphere(const SphericalBody& body, double k0, int l_int, int l_ext);

// Per-mode exterior scattering coefficients f_e/a_e of the body (no cavity
// coupling): the classical Mie response, also by direct interface solve.
// Returns diag entries indexed by wave_sigma.
VecC mie_scattering_diag(const SphericalBody& body, double k0, int l_max);

// Blocks extracted from a MoM solution of the bare structure:
//   t = -U1 Z^-1 U1^t, psi = -U1 Z^-1 U4^t + 1,
//   psi_t = -U4 Z^-1 U1^t + 1, rho = -U4 Z^-1 U4^t
TMatrixBlocks tmatrix_from_mom(const ImpedanceMatrix& zmat, const CouplingMatrix& u1,
                               const CouplingMatrix& u4);

// Composite antenna+structure operator seen from outside (Gsm over the
// exterior index set): M = 1 - (S-1)/2 rho,
//   Gamma' = Gamma + R/2 rho M^-1 T
//   R'     = R (psi_t + rho M^-1 (S-1)/2 psi_t)
//   T'     = psi M^-1 T
//   S'     = 1 + 2 t + psi M^-1 (S-1) psi_t
Gsm hybrid_gsm_t(const Gsm& gsm, const TMatrixBlocks& blocks);

void save_tmatrix(const TMatrixBlocks& blocks, const std::string& path);
TMatrixBlocks load_tmatrix(const std::string& path);

}  // namespace hem
