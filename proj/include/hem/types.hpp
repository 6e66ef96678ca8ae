#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hem {

using cdouble = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double c0 = 299792458.0;           // m/s
inline constexpr double mu0 = 4.0e-7 * pi;          // H/m
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);
inline constexpr double z0_free = 376.730313668;    // ohm, sqrt(mu0/eps0)
inline constexpr cdouble jc{0.0, 1.0};

// Time convention e^{+jwt}: scalar kernel e^{-jkR}/(4 pi R), outgoing radial
// functions are spherical Hankel functions of the second kind.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

// plain (unconjugated) cross product for complex vectors; Eigen's .cross()
// conjugates the result for complex scalars
inline CVec3 ccross(const CVec3& a, const CVec3& b) {
  return CVec3(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
               a.x() * b.y() - a.y() * b.x());
}

// exact integer power of j: j^n for any (possibly negative) n
inline cdouble j_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace hem
