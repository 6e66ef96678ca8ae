#include "hem/wigner.hpp"

#include <cmath>
#include <iostream>

#include "hem/quadrature.hpp"

namespace hem {

Eigen::Matrix3d euler_zyz(double alpha, double beta, double gamma) {
  return (Eigen::AngleAxisd(alpha, Vec3::UnitZ()) * Eigen::AngleAxisd(beta, Vec3::UnitY()) *
          Eigen::AngleAxisd(gamma, Vec3::UnitZ()))
      .toRotationMatrix();
}

namespace {

// centered accessor on a (2l+1)^2 block; out-of-range reads are zero
double bget(const MatR& m, int l, int a, int b) {
  if (std::abs(a) > l || std::abs(b) > l) return 0.0;
  return m(a + l, b + l);
}

double kd(int a, int b) { return a == b ? 1.0 : 0.0; }

double pfun(int i, int a, int b, int l, const MatR& r1, const MatR& prev) {
  if (b == l)
    return bget(r1, 1, i, 1) * bget(prev, l - 1, a, l - 1) -
           bget(r1, 1, i, -1) * bget(prev, l - 1, a, -l + 1);
  if (b == -l)
    return bget(r1, 1, i, 1) * bget(prev, l - 1, a, -l + 1) +
           bget(r1, 1, i, -1) * bget(prev, l - 1, a, l - 1);
  return bget(r1, 1, i, 0) * bget(prev, l - 1, a, b);
}

}  // namespace

std::vector<MatR> real_sh_rotation(const Eigen::Matrix3d& r, int l_max) {
  std::vector<MatR> blocks(l_max + 1);
  blocks[0] = MatR::Ones(1, 1);
  if (l_max == 0) return blocks;

  // l = 1 block in the real-harmonic basis order (m = -1, 0, 1) ~ (y, z, x)
  MatR r1(3, 3);
  r1 << r(1, 1), r(1, 2), r(1, 0),
        r(2, 1), r(2, 2), r(2, 0),
        r(0, 1), r(0, 2), r(0, 0);
  blocks[1] = r1;

  for (int l = 2; l <= l_max; ++l) {
    MatR cur(2 * l + 1, 2 * l + 1);
    const MatR& prev = blocks[l - 1];
    for (int m = -l; m <= l; ++m) {
      for (int n = -l; n <= l; ++n) {
        double denom = (std::abs(n) == l) ? double(2 * l) * (2 * l - 1)
                                          : double(l + n) * (l - n);
        double u = std::sqrt(double(l + m) * (l - m) / denom);
        double v = 0.5 *
                   std::sqrt((1.0 + kd(m, 0)) * (l + std::abs(m) - 1.0) * (l + std::abs(m)) / denom) *
                   (1.0 - 2.0 * kd(m, 0));
        double w = -0.5 * std::sqrt((l - std::abs(m) - 1.0) * (l - std::abs(m)) / denom) *
                   (1.0 - kd(m, 0));
        double val = 0.0;
        if (u != 0.0) val += u * pfun(0, m, n, l, r1, prev);
        if (v != 0.0) {
          double vv;
          if (m == 0)
            vv = pfun(1, 1, n, l, r1, prev) + pfun(-1, -1, n, l, r1, prev);
          else if (m > 0)
            vv = pfun(1, m - 1, n, l, r1, prev) * std::sqrt(1.0 + kd(m, 1)) -
                 pfun(-1, -m + 1, n, l, r1, prev) * (1.0 - kd(m, 1));
          else
            vv = pfun(1, m + 1, n, l, r1, prev) * (1.0 - kd(m, -1)) +
                 pfun(-1, -m - 1, n, l, r1, prev) * std::sqrt(1.0 + kd(m, -1));
          val += v * vv;
        }
        if (w != 0.0) {
          double ww;
          if (m > 0)
            ww = pfun(1, m + 1, n, l, r1, prev) + pfun(-1, -m - 1, n, l, r1, prev);
          else
            ww = pfun(1, m - 1, n, l, r1, prev) - pfun(-1, -m + 1, n, l, r1, prev);
          val += w * ww;
        }
        cur(m + l, n + l) = val;
      }
    }
    blocks[l] = cur;
  }
  return blocks;
}

MatR rotation_matrix_waves(const Eigen::Matrix3d& rot, int l_max) {
  std::vector<MatR> blocks = real_sh_rotation(rot, l_max);
  MatR d = MatR::Zero(num_waves(l_max), num_waves(l_max));
  for (int l = 1; l <= l_max; ++l)
    for (int mp = -l; mp <= l; ++mp)
      for (int m = -l; m <= l; ++m) {
        double v = blocks[l](mp + l, m + l);
        for (int tau = 1; tau <= 2; ++tau)
          d(wave_sigma({tau, l, mp}), wave_sigma({tau, l, m})) = v;
      }
  return d;
}

MatR rotation_matrix(double alpha, double beta, double gamma, int l_max) {
  return rotation_matrix_waves(euler_zyz(alpha, beta, gamma), l_max);
}

MatR axial_translation(double delta, double k0, int l_max) {
  int L = l_max;
  double t = k0 * delta;
  if (std::abs(delta) > 0.5 * L / k0)
    std::cerr << "axial_translation: |delta| k0 = " << std::abs(t) << " large for l_max = " << L
              << ", truncation may be inaccurate\n";

  int pmax = 2 * L;
  std::vector<cdouble> jp;
  sph_bessel_j(pmax, cdouble(t), jp);

  int ng = 2 * L + 6;
  std::vector<double> xg, wg;
  gauss_legendre(ng, xg, wg);

  // per node: normalized Legendre tables and P_p values
  std::vector<LegendreTable> leg(ng);
  std::vector<std::vector<double>> pp(ng);
  for (int q = 0; q < ng; ++q) {
    double x = xg[q];
    leg[q] = legendre_table(L, x, std::sqrt(1.0 - x * x));
    legendre_p(pmax, x, pp[q]);
  }

  MatR c = MatR::Zero(num_waves(L), num_waves(L));
  std::vector<double> prof(ng);

  auto accumulate = [&](int la, int ta, int ma, int lb, int tb, int mb, bool cross, double sign) {
    double na = 1.0 / std::sqrt(double(la) * (la + 1));
    double nb = 1.0 / std::sqrt(double(lb) * (lb + 1));
    int mt = std::abs(ma);
    for (int q = 0; q < ng; ++q) {
      const LegendreTable& lt = leg[q];
      double pa = lt.pim[lt.idx(la, mt)], ta_ = lt.tau[lt.idx(la, mt)];
      double pb = lt.pim[lt.idx(lb, mt)], tb_ = lt.tau[lt.idx(lb, mt)];
      prof[q] = cross ? sign * (ta_ * pb + pa * tb_) * na * nb
                      : (pa * pb + ta_ * tb_) * na * nb;
    }
    cdouble sum = 0.0;
    int p0 = std::abs(la - lb);
    // parity: nonzero g only for p = la+lb (mod 2) in the same-tau case and
    // opposite parity in the cross case
    int par = cross ? (la + lb + 1) % 2 : (la + lb) % 2;
    if (p0 % 2 != par) ++p0;
    for (int p = p0; p <= la + lb; p += 2) {
      double g = 0.0;
      for (int q = 0; q < ng; ++q) g += wg[q] * pp[q][p] * prof[q];
      g *= 2.0 * pi;
      sum += j_pow((lb - tb) - (la - ta)) * j_pow(-p) * double(2 * p + 1) * jp[p] * g;
    }
    c(wave_sigma({ta, la, ma}), wave_sigma({tb, lb, mb})) = sum.real();
  };

  for (int mt = 0; mt <= L; ++mt) {
    int lmin = std::max(1, mt);
    for (int la = lmin; la <= L; ++la)
      for (int lb = lmin; lb <= L; ++lb) {
        if (mt == 0) {
          accumulate(la, 1, 0, lb, 1, 0, false, 0);
          accumulate(la, 2, 0, lb, 2, 0, false, 0);
          continue;
        }
        for (int sgn : {+1, -1}) {
          int m = sgn * mt;
          accumulate(la, 1, m, lb, 1, m, false, 0);
          accumulate(la, 2, m, lb, 2, m, false, 0);
          // A_1 with azimuth slot m couples to A_2 with slot -m, weight -sign(m)
          accumulate(la, 1, m, lb, 2, -m, true, -double(sgn));
          accumulate(la, 2, -m, lb, 1, m, true, -double(sgn));
        }
      }
  }
  return c;
}

WignerTransform wigner_transform(double delta, double alpha, double beta, double gamma, double k0,
                                 int l_max) {
  WignerTransform w;
  w.delta = delta;
  w.euler = {alpha, beta, gamma};
  w.l_max = l_max;
  MatR d_frame = rotation_matrix_waves(euler_zyz(alpha, beta, gamma).transpose(), l_max);
  w.t = axial_translation(delta, k0, l_max) * d_frame;
  return w;
}

}  // namespace hem
