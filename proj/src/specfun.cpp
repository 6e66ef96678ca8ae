#include "hem/specfun.hpp"

#include <cmath>

namespace hem {

void sph_bessel_j(int lmax, cdouble z, std::vector<cdouble>& j) {
  j.assign(lmax + 1, cdouble(0));
  double az = std::abs(z);
  if (az < 1e-12) {
    // series limit j_l(z) ~ z^l / (2l+1)!!
    cdouble zl = 1.0;
    double dfac = 1.0;
    for (int l = 0; l <= lmax; ++l) {
      j[l] = zl / dfac;
      zl *= z;
      dfac *= 2 * l + 3;
    }
    return;
  }
  int ltop = lmax + 26 + static_cast<int>(az);
  cdouble fp = 0.0, f = 1e-280;
  std::vector<cdouble> tmp(lmax + 1);
  for (int l = ltop; l >= 1; --l) {
    cdouble fm = cdouble(2 * l + 1) / z * f - fp;
    fp = f;
    f = fm;
    if (l - 1 <= lmax) tmp[l - 1] = f;
    // rescale to avoid overflow of the unnormalized minimal solution
    if (std::abs(f) > 1e250) {
      double s = 1e-250;
      f *= s;
      fp *= s;
      for (auto& t : tmp) t *= s;
    }
  }
  cdouble j0 = std::sin(z) / z;
  cdouble scale = j0 / tmp[0];
  j.resize(lmax + 1);
  for (int l = 0; l <= lmax; ++l) j[l] = tmp[l] * scale;
}

void sph_bessel_jy(int lmax, cdouble z, std::vector<cdouble>& j, std::vector<cdouble>& y) {
  require(std::abs(z) > 0.0, "sph_bessel_jy: argument must be nonzero");
  sph_bessel_j(lmax, z, j);
  y.assign(lmax + 1, cdouble(0));
  y[0] = -std::cos(z) / z;
  if (lmax >= 1) y[1] = (-std::cos(z) / z - std::sin(z)) / z;
  for (int l = 1; l < lmax; ++l) y[l + 1] = cdouble(2 * l + 1) / z * y[l] - y[l - 1];
}

void sph_hankel2(int lmax, cdouble z, std::vector<cdouble>& h2) {
  std::vector<cdouble> j, y;
  sph_bessel_jy(lmax, z, j, y);
  h2.resize(lmax + 1);
  for (int l = 0; l <= lmax; ++l) h2[l] = j[l] - jc * y[l];
}

RadialTable radial_table(int lmax, int p, cdouble z) {
  require(p == 1 || p == 4, "radial_table: kind p must be 1 or 4");
  std::vector<cdouble> zl(lmax + 1), zlm1(lmax + 2);
  if (p == 1) {
    std::vector<cdouble> j;
    sph_bessel_j(lmax + 1, z, j);
    for (int l = 0; l <= lmax; ++l) zl[l] = j[l];
    for (int l = 0; l <= lmax + 1; ++l) zlm1[l] = j[l];
  } else {
    require(std::abs(z) > 0.0, "radial_table: outgoing waves singular at origin");
    std::vector<cdouble> h;
    sph_hankel2(lmax + 1, z, h);
    for (int l = 0; l <= lmax; ++l) zl[l] = h[l];
    for (int l = 0; l <= lmax + 1; ++l) zlm1[l] = h[l];
  }
  RadialTable t;
  t.rad1.resize(lmax + 1);
  t.rad2.resize(lmax + 1);
  t.rad3.resize(lmax + 1);
  bool near_zero = std::abs(z) < 1e-12;
  for (int l = 0; l <= lmax; ++l) {
    t.rad1[l] = zl[l];
    if (near_zero) {
      // limits for regular waves (only l >= 1 is used by vector waves):
      // (z j_l)'/z -> (l+1) z^{l-1} / (2l+1)!!, j_l/z -> z^{l-1}/(2l+1)!!
      t.rad2[l] = (l == 1) ? cdouble(2.0 / 3.0) : cdouble(0.0);
      t.rad3[l] = (l == 1) ? cdouble(1.0 / 3.0) : cdouble(0.0);
    } else if (l == 0) {
      // z_{-1}: j_{-1} = cos(z)/z, h2_{-1} = e^{-jz}/z
      t.rad2[0] = (p == 1) ? std::cos(z) / z : std::exp(-jc * z) / z;
      t.rad3[0] = zl[0] / z;
    } else {
      // (z z_l)'/z = z_{l-1} - l z_l / z
      t.rad2[l] = zlm1[l - 1] - cdouble(l) * zl[l] / z;
      t.rad3[l] = zl[l] / z;
    }
  }
  return t;
}

LegendreTable legendre_table(int lmax, double x, double st) {
  LegendreTable t;
  t.lmax = lmax;
  int n = (lmax + 1) * (lmax + 2) / 2;
  t.s.assign(n, 0.0);
  t.tau.assign(n, 0.0);
  t.pim.assign(n, 0.0);

  const double inv4pi = 1.0 / (4.0 * pi);
  // sectorial seeds: S_mm and S_mm/sin(theta)
  std::vector<double> smm(lmax + 1), smm_over(lmax + 1);
  smm[0] = std::sqrt(inv4pi);
  smm_over[0] = 0.0;  // unused for m=0
  for (int m = 1; m <= lmax; ++m) {
    double f = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    smm[m] = f * st * smm[m - 1];
    smm_over[m] = (m == 1) ? f * smm[0] : f * st * smm_over[m - 1];
  }

  for (int m = 0; m <= lmax; ++m) {
    // upward recurrence over l at fixed m, applied to S and S/sin(theta)
    double sprev = 0.0, scur = smm[m];
    double oprev = 0.0, ocur = smm_over[m];
    t.s[t.idx(m, m)] = scur;
    if (m >= 1) t.pim[t.idx(m, m)] = m * ocur;
    for (int l = m + 1; l <= lmax; ++l) {
      double a = std::sqrt((2.0 * l + 1.0) * (2.0 * l - 1.0) / ((l - m) * double(l + m)));
      double b = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 3.0) * (l - 1.0 - m) * (l - 1.0 + m) /
                           ((l - m) * double(l + m)));
      double snext = a * x * scur - b * sprev;
      sprev = scur;
      scur = snext;
      t.s[t.idx(l, m)] = scur;
      if (m >= 1) {
        double onext = a * x * ocur - b * oprev;
        oprev = ocur;
        ocur = onext;
        t.pim[t.idx(l, m)] = m * ocur;
      }
    }
    // tau = dS/dtheta = (l x S_lm - c S_{l-1,m}) / sin(theta); at m = 0 the
    // division is safe away from poles, and callers avoid exact poles.
    for (int l = m; l <= lmax; ++l) {
      double slm = t.s[t.idx(l, m)];
      double slm1 = (l - 1 >= m) ? t.s[t.idx(l - 1, m)] : 0.0;
      double c = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) * (l * l - double(m) * m));
      if (m >= 1) {
        // sin*S' form via the pim recurrence output keeps poles finite:
        // dS/dtheta = l x (S/sin) - c (S_{l-1}/sin)
        double s_over = t.pim[t.idx(l, m)] / m;
        double s1_over = (l - 1 >= m) ? t.pim[t.idx(l - 1, m)] / m : 0.0;
        t.tau[t.idx(l, m)] = l * x * s_over - c * s1_over;
      } else {
        t.tau[t.idx(l, m)] = (st > 1e-300) ? (l * x * slm - c * slm1) / st : 0.0;
      }
    }
  }
  return t;
}

void legendre_p(int lmax, double x, std::vector<double>& p) {
  p.resize(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int l = 1; l < lmax; ++l) p[l + 1] = ((2 * l + 1) * x * p[l] - l * p[l - 1]) / (l + 1);
}

}  // namespace hem
