#pragma once

#include <array>
#include <string>
#include <vector>

#include "hem/types.hpp"

namespace hem {

struct Material {
  enum class Kind { PEC, Penetrable };
  Kind kind = Kind::PEC;
  cdouble eps_r{1.0, 0.0};
  cdouble mu_r{1.0, 0.0};

  static Material pec() { return {}; }
  static Material penetrable(cdouble eps_r, cdouble mu_r = cdouble(1.0, 0.0)) {
    return {Kind::Penetrable, eps_r, mu_r};
  }
  // interior wavenumber/impedance at free-space wavenumber k0
  cdouble k_d(double k0) const { return k0 * std::sqrt(eps_r * mu_r); }
  cdouble z_d() const { return z0_free * std::sqrt(mu_r / eps_r); }
};

// Triangulated surface. Closed meshes are oriented with outward normals
// (components nested at odd depth point into the enclosed cavity, so the
// solid's boundary orientation is consistent). Open meshes are merely
// orientation-consistent.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  Material material;

  Vec3 vertex(int i) const { return vertices[i]; }
  Vec3 tri_vertex(int t, int k) const { return vertices[triangles[t][k]]; }
  double area(int t) const;
  Vec3 normal(int t) const;  // unit
  Vec3 centroid(int t) const;
  int num_boundary_edges() const;
  bool closed() const { return num_boundary_edges() == 0; }
  double signed_volume() const;
  double enclosing_radius(const Vec3& origin = Vec3::Zero()) const;
  std::vector<std::byte> canonical_bytes() const;  // for cache digests
};

// Validates manifoldness and repairs orientation in place. Throws on
// non-manifold edges, and on boundary edges unless allow_open.
void validate_mesh(TriangleMesh& mesh, bool allow_open);

// ASCII triangle-list format, see README. Rejects open meshes.
TriangleMesh load_mesh(const std::string& path, const Material& material);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

// Icosphere with 20*4^s triangles, vertices at the given radius.
TriangleMesh mesh_sphere(double radius, int subdivisions, const Material& material = Material::pec());

// Open rectangular plate in the z = z0 plane, spanning
// [-lx/2,lx/2] x [-ly/2,ly/2], (nx x ny) cells split into triangles.
TriangleMesh mesh_plate(double lx, double ly, int nx, int ny, double z0 = 0.0);

// Open strip in the x = 0 plane along z: length lz (nz cells), width wy
// (nw cells), centered at the origin. Used for strip-dipole antennas.
TriangleMesh mesh_strip(double lz, double wy, int nz, int nw);

// Paraboloid z = (x^2+y^2)/(4F) - sag, open cap of aperture radius a,
// apex centered so the focus sits at the origin (feed location).
TriangleMesh mesh_paraboloid(double focal_length, double aperture_radius, int nr, int nphi);

TriangleMesh transform_mesh(const TriangleMesh& mesh, const Eigen::Matrix3d& rot, const Vec3& shift);
TriangleMesh flip_orientation(const TriangleMesh& mesh);
TriangleMesh merge_meshes(const TriangleMesh& a, const TriangleMesh& b);

struct EnclosingRadii {
  double r_a = 0.0;
  double r_b = 0.0;
  double kappa = 0.0;  // r_b / r_a
};
EnclosingRadii enclosing_radii(const TriangleMesh& antenna, const TriangleMesh& structure,
                               const Vec3& antenna_origin);

}  // namespace hem
