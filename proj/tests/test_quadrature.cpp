#include <doctest.h>

#include "hem/quadrature.hpp"
#include "hem/specfun.hpp"

using namespace hem;

namespace {
// exact integral of b1^p b2^q over the reference triangle (area-normalized):
// p! q! 2! / (p+q+2)!  (times 2 for the unit-weight normalization)
double monomial_exact(int p, int q) {
  auto fact = [](int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return 2.0 * fact(p) * fact(q) / fact(p + q + 2);
}
}  // namespace

TEST_CASE("triangle rules integrate monomials to their stated degree") {
  for (int npts : {1, 3, 6, 7, 12}) {
    const TriangleRule& rule = triangle_rule(npts);
    double wsum = 0;
    for (const auto& p : rule.pts) wsum += p.w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    for (int p = 0; p <= rule.degree; ++p)
      for (int q = 0; p + q <= rule.degree; ++q) {
        double sum = 0;
        for (const auto& pt : rule.pts) sum += pt.w * std::pow(pt.b1, p) * std::pow(pt.b2, q);
        INFO("rule ", npts, " monomial ", p, " ", q);
        CHECK(sum == doctest::Approx(monomial_exact(p, q)).epsilon(1e-12));
      }
  }
}

TEST_CASE("collapsed product rule reaches high degree") {
  TriangleRule rule = triangle_product_rule(10);
  for (int p = 0; p <= 11; ++p) {
    double sum = 0;
    for (const auto& pt : rule.pts) sum += pt.w * std::pow(pt.b1, p);
    CHECK(sum == doctest::Approx(monomial_exact(p, 0)).epsilon(1e-12));
  }
}

TEST_CASE("gauss-legendre nodes integrate polynomials") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double sum = 0;
  for (int i = 0; i < 8; ++i) sum += w[i] * std::pow(x[i], 14);
  CHECK(sum == doctest::Approx(2.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("spherical bessel agree with the standard library for real arguments") {
  for (double xr : {0.3, 1.7, 6.0, 21.5}) {
    std::vector<cdouble> j, y;
    sph_bessel_jy(12, cdouble(xr), j, y);
    for (int l = 0; l <= 12; ++l) {
      CHECK(j[l].real() == doctest::Approx(std::sph_bessel(l, xr)).epsilon(1e-11));
      CHECK(std::abs(j[l].imag()) < 1e-14);
      CHECK(y[l].real() == doctest::Approx(std::sph_neumann(l, xr)).epsilon(1e-10));
    }
  }
}

TEST_CASE("spherical bessel wronskian holds for complex argument") {
  cdouble z(2.3, -0.45);
  std::vector<cdouble> j, y;
  sph_bessel_jy(10, z, j, y);
  for (int l = 1; l <= 10; ++l) {
    cdouble w = j[l] * y[l - 1] - j[l - 1] * y[l];
    CHECK(std::abs(w - 1.0 / (z * z)) < 1e-12 * std::abs(1.0 / (z * z)));
  }
}

TEST_CASE("normalized legendre tables are orthonormal") {
  int lmax = 10;
  std::vector<double> x, w;
  gauss_legendre(40, x, w);
  // int S_lm S_l'm dx = delta_ll' / (2 pi)
  for (int m : {0, 1, 3}) {
    for (int l = m == 0 ? 1 : m; l <= lmax; l += 2)
      for (int lp = l; lp <= lmax; lp += 3) {
        double sum = 0;
        for (size_t q = 0; q < x.size(); ++q) {
          LegendreTable t = legendre_table(lmax, x[q], std::sqrt(1 - x[q] * x[q]));
          sum += w[q] * t.s[t.idx(l, m)] * t.s[t.idx(lp, m)];
        }
        double expect = l == lp ? 1.0 / (2.0 * pi) : 0.0;
        CHECK(sum == doctest::Approx(expect).epsilon(1e-10).scale(1.0 / (2 * pi)));
      }
  }
}

TEST_CASE("legendre tau matches finite differences of s") {
  int lmax = 8;
  double theta = 0.9;
  double h = 1e-6;
  LegendreTable tp = legendre_table(lmax, std::cos(theta + h), std::sin(theta + h));
  LegendreTable tm = legendre_table(lmax, std::cos(theta - h), std::sin(theta - h));
  LegendreTable t0 = legendre_table(lmax, std::cos(theta), std::sin(theta));
  for (int l = 1; l <= lmax; ++l)
    for (int m = 0; m <= l; ++m) {
      double fd = (tp.s[tp.idx(l, m)] - tm.s[tm.idx(l, m)]) / (2 * h);
      CHECK(t0.tau[t0.idx(l, m)] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("pim equals m S over sin theta") {
  double theta = 1.234;
  LegendreTable t = legendre_table(6, std::cos(theta), std::sin(theta));
  for (int l = 1; l <= 6; ++l)
    for (int m = 1; m <= l; ++m)
      CHECK(t.pim[t.idx(l, m)] ==
            doctest::Approx(m * t.s[t.idx(l, m)] / std::sin(theta)).epsilon(1e-12));
}
