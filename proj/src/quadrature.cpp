#include "hem/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <utility>

namespace hem {

namespace {

TriangleRule make_symmetric(std::vector<std::pair<std::array<double, 3>, double>> groups, int degree) {
  TriangleRule rule;
  rule.degree = degree;
  for (const auto& [b, w] : groups) {
    // expand distinct cyclic/mirror permutations of the barycentric triple
    std::vector<std::array<double, 3>> perms = {
        {b[0], b[1], b[2]}, {b[1], b[2], b[0]}, {b[2], b[0], b[1]},
        {b[0], b[2], b[1]}, {b[2], b[1], b[0]}, {b[1], b[0], b[2]}};
    std::vector<std::array<double, 3>> uniq;
    for (const auto& p : perms) {
      bool seen = false;
      for (const auto& q : uniq)
        if (std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) + std::abs(p[2] - q[2]) < 1e-14) seen = true;
      if (!seen) uniq.push_back(p);
    }
    for (const auto& p : uniq) rule.pts.push_back({p[0], p[1], p[2], w});
  }
  return rule;
}

}  // namespace

const TriangleRule& triangle_rule(int npoints) {
  static const std::map<int, TriangleRule> rules = [] {
    std::map<int, TriangleRule> m;
    m[1] = make_symmetric({{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0}}, 1);
    m[3] = make_symmetric({{{0.5, 0.5, 0.0}, 1.0 / 3}}, 2);
    m[6] = make_symmetric(
        {{{0.816847572980459, 0.091576213509771, 0.091576213509771}, 0.109951743655322},
         {{0.108103018168070, 0.445948490915965, 0.445948490915965}, 0.223381589678011}},
        4);
    m[7] = make_symmetric(
        {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.225},
         {{0.059715871789770, 0.470142064105115, 0.470142064105115}, 0.132394152788506},
         {{0.797426985353087, 0.101286507323456, 0.101286507323456}, 0.125939180544827}},
        5);
    m[12] = make_symmetric(
        {{{0.873821971016996, 0.063089014491502, 0.063089014491502}, 0.050844906370207},
         {{0.501426509658179, 0.249286745170910, 0.249286745170910}, 0.116786275726379},
         {{0.636502499121399, 0.310352451033785, 0.053145049844816}, 0.082851075618374}},
        6);
    return m;
  }();
  auto it = rules.find(npoints);
  require(it != rules.end(), "triangle_rule: unsupported point count " + std::to_string(npoints));
  return it->second;
}

TriangleRule triangle_product_rule(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  TriangleRule rule;
  rule.degree = 2 * n - 3;
  for (int i = 0; i < n; ++i) {
    double u = 0.5 * (x[i] + 1.0);  // [0,1]
    double wu = 0.5 * w[i];
    for (int j = 0; j < n; ++j) {
      double v = 0.5 * (x[j] + 1.0);
      double wv = 0.5 * w[j];
      // collapsed map: (u,v) -> (u, v(1-u)), jacobian (1-u); weights
      // normalized to unit total (reference triangle area is 1/2)
      double b1 = u, b2 = v * (1.0 - u);
      rule.pts.push_back({1.0 - b1 - b2, b1, b2, 2.0 * wu * wv * (1.0 - u)});
    }
  }
  return rule;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int l = 0; l < n; ++l) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2 * l + 1) * t * p1 - l * p2) / (l + 1);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = -p0 / dp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace hem
