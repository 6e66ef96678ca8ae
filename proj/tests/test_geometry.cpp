#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hem/mesh.hpp"
#include "hem/rwg.hpp"

using namespace hem;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* tetra_mesh =
    "# regular tetrahedron\n"
    "counts 4 4\n"
    "v 1 1 1\n"
    "v 1 -1 -1\n"
    "v -1 1 -1\n"
    "v -1 -1 1\n"
    "t 0 1 2\n"
    "t 0 3 1\n"
    "t 0 2 3\n"
    "t 1 3 2\n";

}  // namespace

TEST_CASE("tetrahedron loads with 4 triangles and 6 interior edges") {
  TriangleMesh mesh = load_mesh(write_temp("tetra.msh", tetra_mesh), Material::pec());
  CHECK(mesh.triangles.size() == 4);
  CHECK(mesh.closed());
  CHECK(mesh.signed_volume() > 0);
  RwgBasis basis = build_rwg(mesh);
  CHECK(basis.size() == 6);
}

TEST_CASE("orientation repair fixes scrambled triangles") {
  std::string scrambled =
      "counts 4 4\n"
      "v 1 1 1\nv 1 -1 -1\nv -1 1 -1\nv -1 -1 1\n"
      "t 0 2 1\n"  // flipped
      "t 0 3 1\n"
      "t 0 2 3\n"
      "t 1 2 3\n";  // flipped
  TriangleMesh mesh = load_mesh(write_temp("tetra_scrambled.msh", scrambled), Material::pec());
  CHECK(mesh.signed_volume() > 0);
  CHECK(build_rwg(mesh).size() == 6);
}

TEST_CASE("icosphere subdivision follows the euler formula") {
  TriangleMesh s0 = mesh_sphere(1.0, 0);
  CHECK(s0.triangles.size() == 20);
  TriangleMesh s2 = mesh_sphere(1.0, 2);
  CHECK(s2.triangles.size() == 320);
  CHECK(build_rwg(s2).size() == 480);  // E = 3F/2 for a closed mesh
  TriangleMesh s3 = mesh_sphere(1.0, 3);
  CHECK(s3.triangles.size() == 1280);
  CHECK(build_rwg(s3).size() == 1920);
  // V - E + F = 2
  int v = (int)s3.vertices.size(), f = (int)s3.triangles.size();
  int e = build_rwg(s3).size();
  CHECK(v - e + f == 2);
}

TEST_CASE("icosphere vertices sit on the requested radius") {
  TriangleMesh s = mesh_sphere(0.5, 1);
  for (const auto& v : s.vertices) CHECK(std::abs(v.norm() - 0.5) < 1e-12 * 0.5);
}

TEST_CASE("open boundary edge is rejected by load_mesh") {
  std::string open_mesh =
      "counts 4 2\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\n"
      "t 0 1 2\n"
      "t 1 3 2\n";
  CHECK_THROWS_WITH_AS(load_mesh(write_temp("open.msh", open_mesh), Material::pec()),
                       doctest::Contains("open boundary edge"), Error);
}

TEST_CASE("nonmanifold edge is rejected") {
  std::string bad =
      "counts 5 3\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\n"
      "t 0 1 2\n"
      "t 0 1 3\n"
      "t 0 1 4\n";
  CHECK_THROWS_WITH_AS(load_mesh(write_temp("nonmanifold.msh", bad), Material::pec()),
                       doctest::Contains("non-manifold"), Error);
}

TEST_CASE("rwg normal component is continuous across the shared edge") {
  TriangleMesh mesh = mesh_sphere(1.0, 1);
  RwgBasis basis = build_rwg(mesh);
  for (int n = 0; n < basis.size(); n += 7) {
    const RwgFunction& f = basis.functions[n];
    Vec3 mid = 0.5 * (mesh.vertex(f.v0) + mesh.vertex(f.v1));
    Vec3 edge = (mesh.vertex(f.v1) - mesh.vertex(f.v0)).normalized();
    // in-plane normal of the edge within each triangle
    auto edge_normal = [&](int t) {
      Vec3 nrm = mesh.normal(t);
      return edge.cross(nrm).normalized();
    };
    Vec3 vp = basis.value(n, f.tri_plus, mid);
    Vec3 vm = basis.value(n, f.tri_minus, mid);
    double flux_p = vp.dot(edge_normal(f.tri_plus));
    double flux_m = vm.dot(edge_normal(f.tri_minus));
    CHECK(std::abs(std::abs(flux_p) - std::abs(flux_m)) < 1e-12 * std::abs(flux_p));
    CHECK(std::abs(std::abs(flux_p) - 1.0) < 1e-12);  // unit normal flux at the edge
  }
}

TEST_CASE("rwg divergence is plus minus l over area") {
  TriangleMesh mesh = mesh_sphere(1.0, 1);
  RwgBasis basis = build_rwg(mesh);
  const RwgFunction& f = basis.functions[0];
  CHECK(basis.divergence(0, f.tri_plus) ==
        doctest::Approx(f.length / mesh.area(f.tri_plus)).epsilon(1e-14));
  CHECK(basis.divergence(0, f.tri_minus) ==
        doctest::Approx(-f.length / mesh.area(f.tri_minus)).epsilon(1e-14));
}

TEST_CASE("enclosing radii and the kappa^6 saving factors") {
  TriangleMesh ant = mesh_sphere(1.0, 1);
  TriangleMesh s1 = mesh_sphere(2.16, 1);
  EnclosingRadii r = enclosing_radii(ant, s1, Vec3::Zero());
  CHECK(r.r_a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.kappa == doctest::Approx(2.16).epsilon(1e-12));
  CHECK(std::pow(r.kappa, 6) == doctest::Approx(101.6).epsilon(2e-3));
  TriangleMesh s2 = mesh_sphere(1.47, 1);
  EnclosingRadii r2 = enclosing_radii(ant, s2, Vec3::Zero());
  CHECK(std::pow(r2.kappa, 6) == doctest::Approx(10.1).epsilon(2e-3));
}

TEST_CASE("shell merge orients the inner sphere into the cavity") {
  TriangleMesh outer = mesh_sphere(1.0, 1, Material::penetrable(cdouble(5.0, -0.45)));
  TriangleMesh inner = flip_orientation(mesh_sphere(0.8, 1));
  TriangleMesh shell = merge_meshes(outer, inner);
  double v_outer = 4.0 / 3.0 * pi;  // approximated by the faceted spheres
  CHECK(shell.signed_volume() > 0);
  CHECK(shell.signed_volume() < v_outer);
  // validate_mesh normalizes a scrambled version the same way
  TriangleMesh scrambled = shell;
  std::swap(scrambled.triangles[3][1], scrambled.triangles[3][2]);
  for (auto& t : scrambled.triangles)
    if (&t - scrambled.triangles.data() > 650) std::swap(t[1], t[2]);
  validate_mesh(scrambled, false);
  CHECK(scrambled.signed_volume() == doctest::Approx(shell.signed_volume()).epsilon(1e-12));
}

TEST_CASE("strip and plate meshes are open and oriented") {
  TriangleMesh strip = mesh_strip(0.026, 0.0026, 12, 1);
  CHECK(!strip.closed());
  RwgBasis basis = build_rwg(strip);
  CHECK(basis.size() > 0);
  // port edge lookup: center, crossing the strip axis
  int port = find_edge_near(basis, Vec3::Zero(), Vec3::UnitY());
  const RwgFunction& f = basis.functions[port];
  Vec3 mid = 0.5 * (strip.vertex(f.v0) + strip.vertex(f.v1));
  CHECK(mid.norm() < 1e-9);
  TriangleMesh plate = mesh_plate(0.0325, 0.0065, 10, 2, -0.155 * 0.026);
  CHECK(build_rwg(plate).size() > 0);
}
