#pragma once

#include <array>

#include "hem/waves.hpp"

namespace hem {

// Rotation matrix R = Rz(alpha) Ry(beta) Rz(gamma), intrinsic zyz, acting on
// column vectors.
Eigen::Matrix3d euler_zyz(double alpha, double beta, double gamma);

// Per-degree rotation blocks for the real spherical harmonics, l = 0..l_max,
// block l of size (2l+1)^2, such that the rotated function
// g(rhat) = f(R^T rhat) has coefficients block * coeffs(f). Blocks are
// orthogonal. Recursive construction from the l = 1 block.
std::vector<MatR> real_sh_rotation(const Eigen::Matrix3d& rot, int l_max);

// Coefficient transform of vector spherical waves under the active rotation
// E'(r) = R E(R^T r): block diagonal over l, identical for both tau.
MatR rotation_matrix_waves(const Eigen::Matrix3d& rot, int l_max);

// D(alpha,beta,gamma): active rotation by euler_zyz(alpha,beta,gamma).
MatR rotation_matrix(double alpha, double beta, double gamma, int l_max);

// Re-expansion of regular (and same-kind outgoing) waves about an origin
// displaced by +delta along z: a field with coefficients a about the global
// origin has coefficients axial_translation(delta,k0,l_max) * a about the
// shifted origin. Real, block over |m| with TE/TM cross coupling, and
// R(delta) R(-delta) = 1 up to truncation. Emits a warning to stderr when
// |delta| k0 > 0.5 l_max (truncation becomes unreliable).
MatR axial_translation(double delta, double k0, int l_max);

// Combined antenna repositioning operator for a pose
//   r_global = euler_zyz(alpha,beta,gamma) * (r_local + delta zhat),
// mapping global-frame coefficients to local-frame coefficients.
struct WignerTransform {
  MatR t;                        // R(delta) * D(rot^T)
  double delta = 0.0;            // meters along local z
  std::array<double, 3> euler{}; // radians
  int l_max = 0;
};
WignerTransform wigner_transform(double delta, double alpha, double beta, double gamma, double k0,
                                 int l_max);

}  // namespace hem
