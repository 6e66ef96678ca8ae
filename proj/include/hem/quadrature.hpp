#pragma once

#include <vector>

#include "hem/types.hpp"

namespace hem {

// Symmetric quadrature rule on the reference triangle, barycentric
// coordinates (b0,b1,b2), weights summing to 1 (multiply by triangle area).
struct TriangleRule {
  struct Point {
    double b0, b1, b2, w;
  };
  std::vector<Point> pts;
  int degree = 0;
};

// npoints in {1,3,6,7,12}; throws otherwise.
const TriangleRule& triangle_rule(int npoints);

// Runtime-generated collapsed product rule of 1D order n (n*n points),
// exact for polynomial degree >= 2n-3. Used for reference integrations.
TriangleRule triangle_product_rule(int n);

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace hem
