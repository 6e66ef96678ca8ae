#pragma once

#include "hem/gsm.hpp"
#include "hem/mesh.hpp"
#include "hem/rwg.hpp"

// Shared geometry fixtures for the unit and acceptance suites.
namespace hem::fixtures {

// Dielectric spherical shell (cavity inside), outward-oriented.
inline TriangleMesh shell_mesh(double r_in, double r_out, int subdiv, cdouble eps_r) {
  Material mat = Material::penetrable(eps_r);
  TriangleMesh outer = mesh_sphere(r_out, subdiv, mat);
  TriangleMesh inner = flip_orientation(mesh_sphere(r_in, subdiv, mat));
  TriangleMesh shell = merge_meshes(outer, inner);
  shell.material = mat;
  return shell;
}

struct Antenna {
  TriangleMesh mesh;
  RwgBasis basis;
  DeltaGapPort port;
  double r_a = 0;
};

// Center-fed strip dipole along z in the x = 0 plane.
inline Antenna strip_dipole(double length, double width, int segments) {
  Antenna a;
  a.mesh = mesh_strip(length, width, segments, 1);
  a.basis = build_rwg(a.mesh);
  a.basis.mesh = &a.mesh;
  a.port.edge = find_edge_near(a.basis, Vec3::Zero(), Vec3::UnitY());
  a.r_a = a.mesh.enclosing_radius();
  return a;
}

// Driven strip dipole above a rectangular reflecting plate, dimensions tied
// to the dipole length ell: plate 1.25 ell x 0.25 ell, dipole width ell/10,
// spacing 0.31 ell, the pair centered on the frame origin.
inline Antenna yagi(double ell, int density = 1) {
  double h = 0.31 * ell;
  TriangleMesh dipole = mesh_strip(ell, ell / 10.0, 10 * density, 1);
  // strip lies in x = 0 plane along z; move it to sit at y = +h/2,
  // plate at y = -h/2 (plate built in z = const plane, rotate into x-z)
  Eigen::Matrix3d rot_strip = Eigen::Matrix3d::Identity();
  dipole = transform_mesh(dipole, rot_strip, Vec3(0, h / 2, 0));
  TriangleMesh plate = mesh_plate(0.25 * ell, 1.25 * ell, 2 * density, 8 * density);
  // plate normal along z; rotate so it spans x-z with normal along y
  Eigen::Matrix3d rot_plate = Eigen::AngleAxisd(pi / 2, Vec3::UnitX()).toRotationMatrix();
  plate = transform_mesh(plate, rot_plate, Vec3(0, -h / 2, 0));
  Antenna a;
  a.mesh = merge_meshes(dipole, plate);
  a.mesh.material = Material::pec();
  a.basis = build_rwg(a.mesh);
  a.basis.mesh = &a.mesh;
  a.port.edge = find_edge_near(a.basis, Vec3(0, h / 2, 0), Vec3::UnitY());
  a.r_a = a.mesh.enclosing_radius();
  return a;
}

}  // namespace hem::fixtures
