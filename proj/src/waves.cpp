#include "hem/waves.hpp"

#include <cmath>
#include <fstream>

namespace hem {

WaveIndex wave_from_sigma(int sigma) {
  int tau = sigma % 2 + 1;
  int pair = sigma / 2;
  int l = (int)std::floor(std::sqrt(pair + 1.0));
  while (l * l - 1 + 2 * l < pair) ++l;  // guard rounding
  while (l * l - 1 > pair) --l;
  int m = pair - (l * l - 1) - l;
  return {tau, l, m};
}

std::vector<WaveIndex> wave_list(int l_max) {
  std::vector<WaveIndex> out(num_waves(l_max));
  for (int i = 0; i < (int)out.size(); ++i) out[i] = wave_from_sigma(i);
  return out;
}

int truncation_degree(double k0, double r_a, double iota) {
  require(k0 * r_a > 0.0, "truncation_degree: k r_a must be positive");
  require(iota >= 0.0, "truncation_degree: iota must be nonnegative");
  double ka = k0 * r_a;
  return (int)std::ceil(ka + iota * std::cbrt(ka) + 3.0);
}

AngularTable angular_table(int l_max, const Vec3& rhat) {
  AngularTable t;
  t.l_max = l_max;
  int npair = l_max * (l_max + 2);
  t.a1.assign(npair, Vec3::Zero());
  t.a2.assign(npair, Vec3::Zero());
  t.a3.assign(npair, Vec3::Zero());
  t.y.assign(npair, 0.0);

  double ct = std::clamp(rhat[2], -1.0, 1.0);
  double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  double phi = std::atan2(rhat[1], rhat[0]);

  Vec3 er(st * std::cos(phi), st * std::sin(phi), ct);
  Vec3 eth(ct * std::cos(phi), ct * std::sin(phi), -st);
  Vec3 eph(-std::sin(phi), std::cos(phi), 0.0);

  LegendreTable leg = legendre_table(l_max, ct, st);
  const double sqrt2 = std::sqrt(2.0);

  for (int l = 1; l <= l_max; ++l) {
    double nl = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      int mm = std::abs(m);
      double s = leg.s[leg.idx(l, mm)];
      double tau = leg.tau[leg.idx(l, mm)];
      double pim = leg.pim[leg.idx(l, mm)];
      double phi_m, phi_neg;  // azimuth factor of slot m and of slot -m
      if (m > 0) {
        phi_m = sqrt2 * std::cos(m * phi);
        phi_neg = sqrt2 * std::sin(m * phi);
      } else if (m < 0) {
        phi_m = sqrt2 * std::sin(mm * phi);
        phi_neg = sqrt2 * std::cos(mm * phi);
      } else {
        phi_m = 1.0;
        phi_neg = 0.0;
      }
      double sg = (m > 0) ? 1.0 : (m < 0 ? -1.0 : 0.0);
      int p = t.pair_index(l, m);
      t.y[p] = s * phi_m;
      t.a1[p] = nl * (-sg * pim * phi_neg * eth - tau * phi_m * eph);
      t.a2[p] = nl * (tau * phi_m * eth - sg * pim * phi_neg * eph);
      t.a3[p] = s * phi_m * er;
    }
  }
  return t;
}

namespace {

Eigen::Matrix3Xcd eval_waves_impl(int l_max, int p, cdouble k, const Vec3& r) {
  double rn = r.norm();
  require(p == 1 || p == 4, "eval_waves: kind p must be 1 or 4");
  require(p == 1 || rn > 0.0, "eval_waves: outgoing waves singular at the origin");

  Eigen::Matrix3Xcd out(3, num_waves(l_max));
  Vec3 rhat = rn > 0 ? Vec3(r / rn) : Vec3(0, 0, 1);
  AngularTable ang = angular_table(l_max, rhat);
  RadialTable rad = radial_table(l_max, p, k * rn);

  for (int l = 1; l <= l_max; ++l) {
    double ll = std::sqrt(double(l) * (l + 1));
    for (int m = -l; m <= l; ++m) {
      int pair = ang.pair_index(l, m);
      CVec3 u1 = rad.rad1[l] * ang.a1[pair];
      CVec3 u2 = rad.rad2[l] * ang.a2[pair] + ll * rad.rad3[l] * ang.a3[pair];
      out.col(wave_sigma({1, l, m})) = u1;
      out.col(wave_sigma({2, l, m})) = u2;
    }
  }
  return out;
}

}  // namespace

Eigen::Matrix3Xcd eval_waves(int l_max, int p, double k, const Vec3& r) {
  return eval_waves_impl(l_max, p, cdouble(k), r);
}

Eigen::Matrix3Xcd eval_waves(int l_max, int p, cdouble k, const Vec3& r) {
  return eval_waves_impl(l_max, p, k, r);
}

CVec3 eval_wave(const WaveIndex& alpha, int p, double k, const Vec3& r) {
  require(alpha.l >= 1 && std::abs(alpha.m) <= alpha.l && (alpha.tau == 1 || alpha.tau == 2),
          "eval_wave: bad index");
  return eval_waves(alpha.l, p, k, r).col(wave_sigma(alpha));
}

void save_coeff_csv(const CoeffVector& c, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "save_coeff_csv: cannot open " + path);
  out << "tau,l,m,re,im\n";
  out.precision(17);
  for (int i = 0; i < c.values.size(); ++i) {
    WaveIndex a = wave_from_sigma(i);
    out << a.tau << "," << a.l << "," << a.m << "," << c.values[i].real() << ","
        << c.values[i].imag() << "\n";
  }
}

CoeffVector load_coeff_csv(const std::string& path, CoeffKind kind) {
  std::ifstream in(path);
  require(in.good(), "load_coeff_csv: cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<cdouble> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int tau, l, m;
    double re, im;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf", &tau, &l, &m, &re, &im) == 5)
      vals.push_back({re, im});
  }
  int l_max = (int)std::round(std::sqrt(vals.size() / 2.0 + 1.0)) - 1;
  require(num_waves(l_max) == (int)vals.size(), "load_coeff_csv: bad coefficient count");
  CoeffVector c;
  c.kind = kind;
  c.l_max = l_max;
  c.values = Eigen::Map<VecC>(vals.data(), vals.size());
  return c;
}

CoeffVector plane_wave_coeffs(const Vec3& khat, const CVec3& ehat, cdouble amplitude, double k0,
                              int l_max) {
  require(std::abs(khat.norm() - 1.0) < 1e-10, "plane_wave_coeffs: khat must be unit");
  require(std::abs(khat.cast<cdouble>().dot(ehat)) < 1e-10 * ehat.norm() + 1e-300,
          "plane_wave_coeffs: polarization must be orthogonal to khat");
  CoeffVector c = CoeffVector::zero(l_max, CoeffKind::Incident);
  if (amplitude == cdouble(0)) return c;
  AngularTable ang = angular_table(l_max, khat);
  cdouble scale = 4.0 * pi * amplitude / (k0 * std::sqrt(z0_free));
  auto dot = [](const Vec3& a, const CVec3& b) {
    return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  };
  for (int l = 1; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) {
      int pair = ang.pair_index(l, m);
      cdouble phase = j_pow(-l);  // (-j)^l; tau = 2 carries an extra j
      c.values[wave_sigma({1, l, m})] = scale * phase * dot(ang.a1[pair], ehat);
      c.values[wave_sigma({2, l, m})] = scale * phase * jc * dot(ang.a2[pair], ehat);
    }
  return c;
}

CVec3 eval_field(const CoeffVector& c, int p, double k0, const Vec3& r) {
  Eigen::Matrix3Xcd u = eval_waves(c.l_max, p, k0, r);
  return k0 * std::sqrt(z0_free) * (u * c.values);
}

CVec3 eval_field_h(const CoeffVector& c, int p, double k0, const Vec3& r) {
  Eigen::Matrix3Xcd u = eval_waves(c.l_max, p, k0, r);
  VecC dual = VecC::Zero(c.values.size());
  for (int i = 0; i < c.values.size(); ++i)
    dual[wave_sigma(wave_from_sigma(i).dual())] = c.values[i];
  return jc * k0 / std::sqrt(z0_free) * (u * dual);
}

std::vector<CVec3> far_field_rows(int l_max, const Vec3& rhat) {
  AngularTable ang = angular_table(l_max, rhat);
  std::vector<CVec3> rows(num_waves(l_max));
  double sz = std::sqrt(z0_free);
  for (int l = 1; l <= l_max; ++l) {
    cdouble jl1 = j_pow(l + 1);  // j^(l+2-tau): tau=1 -> j^(l+1), tau=2 -> j^l
    for (int m = -l; m <= l; ++m) {
      int pair = ang.pair_index(l, m);
      rows[wave_sigma({1, l, m})] = sz * jl1 * ang.a1[pair].cast<cdouble>();
      rows[wave_sigma({2, l, m})] = sz * (jl1 / jc) * ang.a2[pair].cast<cdouble>();
    }
  }
  return rows;
}

CVec3 green_dyadic_apply(double k0, const Vec3& r, const Vec3& rp, const Vec3& p) {
  Vec3 R = r - rp;
  double Rn = R.norm();
  require(Rn > 0, "green_dyadic_apply: coincident points");
  Vec3 rh = R / Rn;
  cdouble kR = k0 * Rn;
  cdouble g = std::exp(-jc * kR) / (4.0 * pi * Rn);
  cdouble c1 = 1.0 - jc / kR - 1.0 / (kR * kR);
  cdouble c2 = -1.0 + 3.0 * jc / kR + 3.0 / (kR * kR);
  return g * (c1 * p.cast<cdouble>() + c2 * rh.dot(p) * rh.cast<cdouble>());
}

double green_expansion_check(const Vec3& r, const Vec3& rp, double k0, int l_max) {
  require(r.norm() < rp.norm(), "green_expansion_check: requires |r| < |r'|");
  Eigen::Matrix3Xcd u1 = eval_waves(l_max, 1, k0, r);
  Eigen::Matrix3Xcd u4 = eval_waves(l_max, 4, k0, rp);
  double num = 0, den = 0;
  for (int d = 0; d < 3; ++d) {
    Vec3 p = Vec3::Unit(d);
    CVec3 exact = green_dyadic_apply(k0, r, rp, p);
    // -jk sum_a u1_a(kr) (u4_a(kr') . p)
    CVec3 series = -jc * k0 * (u1 * (u4.transpose() * p.cast<cdouble>()));
    num += (series - exact).squaredNorm();
    den += exact.squaredNorm();
  }
  return std::sqrt(num / den);
}

}  // namespace hem
