#pragma once

#include <vector>

#include "hem/types.hpp"

namespace hem {

// Spherical Bessel j_l(z) and y_l(z) for l = 0..lmax, complex argument.
// j by downward (Miller) recurrence, y by upward recurrence. z must be
// nonzero for y; j alone accepts z = 0.
void sph_bessel_jy(int lmax, cdouble z, std::vector<cdouble>& j, std::vector<cdouble>& y);
void sph_bessel_j(int lmax, cdouble z, std::vector<cdouble>& j);

// h_l^(2)(z) = j_l(z) - i y_l(z)
void sph_hankel2(int lmax, cdouble z, std::vector<cdouble>& h2);

// Radial factor tables for vector spherical waves of kind p at kr = z:
//   rad1[l] = z_l(z)              (tangential factor of tau=1 waves)
//   rad2[l] = (z z_l(z))' / z     (tangential factor of tau=2 waves)
//   rad3[l] = z_l(z) / z          (radial factor of tau=2 waves)
// p = 1 uses j_l, p = 4 uses h_l^(2).
struct RadialTable {
  std::vector<cdouble> rad1, rad2, rad3;
};
RadialTable radial_table(int lmax, int p, cdouble z);

// Fully normalized associated Legendre S_l^m(cos theta) with
// Int_{-1}^{1} S_l^m(x)^2 dx = 1/(2 pi), no Condon-Shortley phase, plus the
// angular derivative tau = dS/dtheta and the scaled function
// pi_m = m S / sin(theta) (well defined at the poles for m >= 1).
// Storage: idx(l,m) = l(l+1)/2 + m, 0 <= m <= l <= lmax.
struct LegendreTable {
  int lmax = 0;
  std::vector<double> s, tau, pim;
  int idx(int l, int m) const { return l * (l + 1) / 2 + m; }
};
LegendreTable legendre_table(int lmax, double cos_theta, double sin_theta);

// Legendre polynomials P_0..P_lmax at x.
void legendre_p(int lmax, double x, std::vector<double>& p);

}  // namespace hem
