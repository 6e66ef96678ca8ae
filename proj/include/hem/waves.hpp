#pragma once

#include <string>
#include <vector>

#include "hem/specfun.hpp"
#include "hem/types.hpp"

namespace hem {

// Vector spherical waves u^(p)_{tau,l,m} in the power-normalized real-harmonic
// convention:
//   tau = 1 (TE):  u_1lm = z_l(kr) A_1lm(rhat)
//   tau = 2 (TM):  u_2lm = (kr z_l)'/(kr) A_2lm + sqrt(l(l+1)) z_l/(kr) A_3lm
// with A_1lm = curl(r Y_lm)/sqrt(l(l+1)), A_2lm = rhat x A_1lm, A_3lm = rhat
// Y_lm, and Y_lm the real orthonormal spherical harmonics (m > 0 cosine
// azimuth, m < 0 sine azimuth). p = 1 regular (j_l), p = 4 outgoing (h_l^2).
//
// Duality: the index bar(alpha) swaps TE and TM, and
// u_bar(alpha) = (1/k) curl u_alpha.
//
// Fields radiated by an antenna carry the k sqrt(Z0) scaling,
//   E = k sqrt(Z0) sum_a f_a u^(4)_a,  H = (jk/sqrt(Z0)) sum_a f_a u^(4)_bar(a),
// so a coefficient vector f radiates the power (1/2) |f|^2 watts.
//
// The dyadic Green function expands, for |r| < |r'|, as
//   G(r,r') = -jk sum_a u^(1)_a(kr) (x) u^(4)_a(kr').

struct WaveIndex {
  int tau = 1;  // 1 TE, 2 TM
  int l = 1;
  int m = 0;
  WaveIndex dual() const { return {3 - tau, l, m}; }
};

inline int num_waves(int l_max) { return 2 * l_max * (l_max + 2); }

// l-major, m = -l..l, tau innermost; zero-based
inline int wave_sigma(const WaveIndex& a) {
  return 2 * ((a.l * a.l - 1) + (a.m + a.l)) + (a.tau - 1);
}
WaveIndex wave_from_sigma(int sigma);
std::vector<WaveIndex> wave_list(int l_max);

// L_max = ceil(k r_a + iota (k r_a)^(1/3) + 3)
int truncation_degree(double k0, double r_a, double iota);

// Real vector spherical harmonics A_{tau,l,m} for all indices at direction
// rhat, plus A_3 scalars. Rows follow wave_sigma ordering restricted to the
// tangential pair; a3[idx(l,m)] stores sqrt(l(l+1))-free radial harmonics.
struct AngularTable {
  int l_max;
  std::vector<Vec3> a1, a2;   // indexed by (l,m) pair index p = l*l-1 + m+l
  std::vector<double> y;      // real Y_lm, same pair index
  std::vector<Vec3> a3;       // rhat * Y_lm
  int pair_index(int l, int m) const { return l * l - 1 + m + l; }
};
AngularTable angular_table(int l_max, const Vec3& rhat);

// All waves of kind p at point r: column sigma holds u_alpha^(p)(k r).
Eigen::Matrix3Xcd eval_waves(int l_max, int p, double k, const Vec3& r);
// complex wavenumber variant (penetrable media)
Eigen::Matrix3Xcd eval_waves(int l_max, int p, cdouble k, const Vec3& r);

CVec3 eval_wave(const WaveIndex& alpha, int p, double k, const Vec3& r);

// Kinds of expansion coefficient vectors.
enum class CoeffKind { Outgoing, Incoming, Incident, Scattered, ExteriorOut, ExteriorIn };

struct CoeffVector {
  VecC values;
  CoeffKind kind = CoeffKind::Outgoing;
  int l_max = 0;

  static CoeffVector zero(int l_max, CoeffKind kind) {
    return {VecC::Zero(num_waves(l_max)), kind, l_max};
  }
};

void save_coeff_csv(const CoeffVector& c, const std::string& path);
CoeffVector load_coeff_csv(const std::string& path, CoeffKind kind);

// Plane wave E = ehat E0 exp(-j k0 khat.r) expanded in regular waves:
// a_alpha = (4 pi E0 / (k0 sqrt(Z0))) (-j)^(l+1-tau) A_alpha(khat).ehat
CoeffVector plane_wave_coeffs(const Vec3& khat, const CVec3& ehat, cdouble amplitude, double k0,
                              int l_max);

// Evaluate E(r) = k sqrt(Z0) sum_a c_a u^(p)_a(k r).
CVec3 eval_field(const CoeffVector& c, int p, double k0, const Vec3& r);
// Magnetic partner H(r) = (jk/sqrt(Z0)) sum_a c_a u^(p)_{bar a}(k r).
CVec3 eval_field_h(const CoeffVector& c, int p, double k0, const Vec3& r);

// Far-field row: F(rhat) = lim r e^{+jkr} E = sqrt(Z0) sum_a f_a j^(l+2-tau)
// A_a(rhat); returns the per-wave vectors so F = sum f_a row[a].
std::vector<CVec3> far_field_rows(int l_max, const Vec3& rhat);

// Free-space dyadic Green function applied to a vector: (I + grad grad /k^2) g
CVec3 green_dyadic_apply(double k0, const Vec3& r, const Vec3& rp, const Vec3& p);

// Relative residual of the truncated expansion of the dyadic Green function
// against the closed form, maximized over three unit dipoles. Requires
// |r| < |r'|.
double green_expansion_check(const Vec3& r, const Vec3& rp, double k0, int l_max);

}  // namespace hem
