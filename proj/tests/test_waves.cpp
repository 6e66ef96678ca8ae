#include <doctest.h>

#include <random>

#include "hem/waves.hpp"
#include "oracles/sphere_quad.hpp"

using namespace hem;

TEST_CASE("wave index maps are bijective up to l_max 25") {
  for (int l_max : {1, 3, 25}) {
    int n = num_waves(l_max);
    std::vector<bool> seen(n, false);
    for (int tau = 1; tau <= 2; ++tau)
      for (int l = 1; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) {
          int s = wave_sigma({tau, l, m});
          REQUIRE(s >= 0);
          REQUIRE(s < n);
          CHECK(!seen[s]);
          seen[s] = true;
          WaveIndex back = wave_from_sigma(s);
          CHECK(back.tau == tau);
          CHECK(back.l == l);
          CHECK(back.m == m);
        }
  }
}

TEST_CASE("dual index is an involution") {
  for (int s = 0; s < num_waves(4); ++s) {
    WaveIndex a = wave_from_sigma(s);
    CHECK(wave_sigma(a.dual().dual()) == s);
    CHECK(a.dual().tau == 3 - a.tau);
  }
}

TEST_CASE("truncation degree formula") {
  // iota = 2 at k r_a ~ 4.1 gives degree 11 and 286 waves
  int l = truncation_degree(2.0 * pi / 0.026, 0.0170002, 2.0);
  CHECK(l == 11);
  CHECK(num_waves(l) == 286);
  CHECK(truncation_degree(1.0, 1e-9, 0.0) == 4);
  CHECK(truncation_degree(1.0, 8.0, 2.0) == 15);
  CHECK_THROWS_AS(truncation_degree(1.0, 0.0, 2.0), Error);
}

TEST_CASE("vector spherical harmonics are orthonormal on the sphere") {
  int l_max = 4;
  auto grid = oracle::sphere_grid(24);
  int nw = num_waves(l_max);
  MatR gram = MatR::Zero(nw, nw);
  for (size_t q = 0; q < grid.points.size(); ++q) {
    AngularTable t = angular_table(l_max, grid.points[q]);
    for (int l = 1; l <= l_max; ++l)
      for (int m = -l; m <= l; ++m) {
        int p = t.pair_index(l, m);
        for (int lp = 1; lp <= l_max; ++lp)
          for (int mp = -lp; mp <= lp; ++mp) {
            int pp = t.pair_index(lp, mp);
            gram(wave_sigma({1, l, m}), wave_sigma({1, lp, mp})) +=
                grid.weights[q] * t.a1[p].dot(t.a1[pp]);
            gram(wave_sigma({2, l, m}), wave_sigma({2, lp, mp})) +=
                grid.weights[q] * t.a2[p].dot(t.a2[pp]);
            gram(wave_sigma({1, l, m}), wave_sigma({2, lp, mp})) +=
                grid.weights[q] * t.a1[p].dot(t.a2[pp]);
          }
      }
  }
  double max_off = 0, max_diag_err = 0;
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nw; ++j) {
      if (i == j)
        max_diag_err = std::max(max_diag_err, std::abs(gram(i, i) - 1.0));
      else
        max_off = std::max(max_off, std::abs(gram(i, j)));
    }
  CHECK(max_diag_err < 1e-8);
  CHECK(max_off < 1e-8);
}

TEST_CASE("regular waves at the origin keep only degree one") {
  Eigen::Matrix3Xcd u = eval_waves(3, 1, 2.0 * pi, Vec3::Zero());
  for (int s = 0; s < num_waves(3); ++s) {
    WaveIndex a = wave_from_sigma(s);
    double mag = u.col(s).norm();
    if (a.l == 1 && a.tau == 2)
      CHECK(mag > 1e-3);  // TM dipole fields are finite at the origin
    else
      CHECK(mag < 1e-12);
  }
}

TEST_CASE("dual wave equals curl over k by finite differences") {
  double k = 2.0 * pi;
  Vec3 r(0.31, -0.22, 0.4);
  double h = 1e-5;
  for (int s : {0, 1, 7, 12, 25, 40}) {
    WaveIndex a = wave_from_sigma(s);
    if (a.l > 3) continue;
    for (int p : {1, 4}) {
      auto field = [&](const Vec3& x) { return eval_wave(a, p, k, x); };
      CVec3 curl;
      for (int c = 0; c < 3; ++c) {
        Vec3 e1 = Vec3::Unit((c + 1) % 3), e2 = Vec3::Unit((c + 2) % 3);
        cdouble d1 = (field(r + h * e1)[(c + 2) % 3] - field(r - h * e1)[(c + 2) % 3]) / (2 * h);
        cdouble d2 = (field(r + h * e2)[(c + 1) % 3] - field(r - h * e2)[(c + 1) % 3]) / (2 * h);
        curl[c] = d1 - d2;
      }
      CVec3 dual = eval_wave(a.dual(), p, k, r);
      CHECK((curl / k - dual).norm() < 1e-6 * dual.norm());
    }
  }
}

TEST_CASE("outgoing waves carry half a watt per unit coefficient") {
  // E = k sqrt(Z0) u^(4), H = (jk/sqrt(Z0)) u_bar^(4): P = 0.5 |f|^2
  double k = 2.0 * pi;
  double radius = 1.7;
  auto grid = oracle::sphere_grid(30);
  for (int s : {0, 1, 10, 29}) {
    WaveIndex a = wave_from_sigma(s);
    CoeffVector f = CoeffVector::zero(3, CoeffKind::Outgoing);
    f.values[s] = 1.0;
    double power = 0;
    for (size_t q = 0; q < grid.points.size(); ++q) {
      Vec3 r = radius * grid.points[q];
      CVec3 e = eval_field(f, 4, k, r);
      CVec3 hc = eval_field_h(f, 4, k, r).conjugate();
      Vec3 poynting = 0.5 * ccross(e, hc).real();
      power += grid.weights[q] * radius * radius * poynting.dot(grid.points[q]);
    }
    INFO("wave tau=", a.tau, " l=", a.l, " m=", a.m);
    CHECK(power == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("plane wave expansion reconstructs the field") {
  double k0 = 2.0 * pi;
  int l_max = 18;
  Vec3 khat = Vec3(0.3, -0.5, 0.81).normalized();
  Vec3 eref = Vec3(0.7, 0.4, 0.0);
  Vec3 ehat = (eref - eref.dot(khat) * khat).normalized();
  cdouble e0(1.3, -0.4);
  CoeffVector a = plane_wave_coeffs(khat, ehat.cast<cdouble>(), e0, k0, l_max);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 r(u(rng), u(rng), u(rng));
    r *= 7.0 / k0 / std::sqrt(3.0);  // all points inside |r| k0 <= l_max/2
    CVec3 reconstructed = eval_field(a, 1, k0, r);
    CVec3 exact = ehat.cast<cdouble>() * e0 * std::exp(-jc * k0 * khat.dot(r));
    CHECK((reconstructed - exact).norm() < 1e-6 * exact.norm());
  }
  CHECK_THROWS_AS(plane_wave_coeffs(khat, khat.cast<cdouble>(), 1.0, k0, 3), Error);
  CoeffVector z = plane_wave_coeffs(khat, ehat.cast<cdouble>(), 0.0, k0, 3);
  CHECK(z.values.norm() == 0.0);
}

TEST_CASE("green expansion matches the closed-form dyadic kernel") {
  double k0 = 2.0 * pi;  // wavelength 1
  Vec3 r(0.06, 0.05, 0.06);
  Vec3 rp(0.3, -0.3, 0.2);
  REQUIRE(r.norm() < 0.22 * rp.norm());
  double resid = green_expansion_check(r, rp, k0, 14);
  CHECK(resid < 1e-8);
  // the bound holds out to a radius ratio of 0.3 with a few more degrees
  Vec3 r03 = r * (0.3 * rp.norm() / r.norm());
  CHECK(green_expansion_check(r03, rp, k0, 18) < 1e-8);

  // monotone improvement with degree
  double prev = 1e9;
  for (int l = 2; l <= 12; ++l) {
    double e = green_expansion_check(r, rp, k0, l);
    CHECK(e <= prev * (1 + 1e-12));
    prev = e;
  }
  CHECK_THROWS_AS(green_expansion_check(rp, r, k0, 4), Error);
}

TEST_CASE("far field rows satisfy the radiated power identity") {
  // sum |f|^2 / 2 equals the pattern power integral
  int l_max = 3;
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  CoeffVector f = CoeffVector::zero(l_max, CoeffKind::Outgoing);
  for (int i = 0; i < f.values.size(); ++i) f.values[i] = cdouble(g(rng), g(rng));
  auto grid = oracle::sphere_grid(20);
  double power = 0;
  for (size_t q = 0; q < grid.points.size(); ++q) {
    std::vector<CVec3> rows = far_field_rows(l_max, grid.points[q]);
    CVec3 ff = CVec3::Zero();
    for (int i = 0; i < f.values.size(); ++i) ff += f.values[i] * rows[i];
    power += grid.weights[q] * ff.squaredNorm() / (2.0 * z0_free);
  }
  CHECK(power == doctest::Approx(0.5 * f.values.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("coefficient csv round trip") {
  CoeffVector c = CoeffVector::zero(2, CoeffKind::Outgoing);
  for (int i = 0; i < c.values.size(); ++i) c.values[i] = cdouble(i * 0.25, -i);
  save_coeff_csv(c, "/tmp/coeff.csv");
  CoeffVector back = load_coeff_csv("/tmp/coeff.csv", CoeffKind::Outgoing);
  CHECK(back.l_max == 2);
  CHECK((back.values - c.values).norm() < 1e-12);
}
