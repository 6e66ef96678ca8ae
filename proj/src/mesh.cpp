#include "hem/mesh.hpp"

#include <cmath>
#include <cstring>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace hem {

double TriangleMesh::area(int t) const {
  Vec3 a = tri_vertex(t, 0), b = tri_vertex(t, 1), c = tri_vertex(t, 2);
  return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 TriangleMesh::normal(int t) const {
  Vec3 a = tri_vertex(t, 0), b = tri_vertex(t, 1), c = tri_vertex(t, 2);
  return (b - a).cross(c - a).normalized();
}

Vec3 TriangleMesh::centroid(int t) const {
  return (tri_vertex(t, 0) + tri_vertex(t, 1) + tri_vertex(t, 2)) / 3.0;
}

namespace {

using EdgeKey = std::pair<int, int>;
EdgeKey ekey(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::map<EdgeKey, std::vector<int>> edge_triangles(const TriangleMesh& mesh) {
  std::map<EdgeKey, std::vector<int>> edges;
  for (int t = 0; t < (int)mesh.triangles.size(); ++t)
    for (int k = 0; k < 3; ++k)
      edges[ekey(mesh.triangles[t][k], mesh.triangles[t][(k + 1) % 3])].push_back(t);
  return edges;
}

// index of directed edge a->b within triangle t, or -1
int directed_edge_pos(const std::array<int, 3>& tri, int a, int b) {
  for (int k = 0; k < 3; ++k)
    if (tri[k] == a && tri[(k + 1) % 3] == b) return k;
  return -1;
}

bool ray_hits_triangle(const Vec3& origin, const Vec3& dir, const Vec3& v0, const Vec3& v1,
                       const Vec3& v2) {
  Vec3 e1 = v1 - v0, e2 = v2 - v0;
  Vec3 p = dir.cross(e2);
  double det = e1.dot(p);
  if (std::abs(det) < 1e-14) return false;
  double inv = 1.0 / det;
  Vec3 s = origin - v0;
  double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return false;
  Vec3 q = s.cross(e1);
  double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return false;
  double tt = e2.dot(q) * inv;
  return tt > 1e-12;
}

}  // namespace

int TriangleMesh::num_boundary_edges() const {
  int n = 0;
  for (const auto& [k, ts] : edge_triangles(*this))
    if (ts.size() == 1) ++n;
  return n;
}

double TriangleMesh::signed_volume() const {
  double v = 0.0;
  for (int t = 0; t < (int)triangles.size(); ++t) {
    Vec3 a = tri_vertex(t, 0), b = tri_vertex(t, 1), c = tri_vertex(t, 2);
    v += a.dot(b.cross(c)) / 6.0;
  }
  return v;
}

double TriangleMesh::enclosing_radius(const Vec3& origin) const {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, (v - origin).norm());
  return r;
}

std::vector<std::byte> TriangleMesh::canonical_bytes() const {
  std::vector<std::byte> out;
  auto push = [&out](const void* p, size_t n) {
    const std::byte* b = static_cast<const std::byte*>(p);
    out.insert(out.end(), b, b + n);
  };
  uint64_t nv = vertices.size(), nt = triangles.size();
  push(&nv, 8);
  push(&nt, 8);
  for (const auto& v : vertices)
    for (int k = 0; k < 3; ++k) {
      double x = v[k];
      push(&x, 8);
    }
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      int64_t i = t[k];
      push(&i, 8);
    }
  double m[4] = {material.eps_r.real(), material.eps_r.imag(), material.mu_r.real(),
                 material.mu_r.imag()};
  push(m, 32);
  int kind = material.kind == Material::Kind::PEC ? 0 : 1;
  push(&kind, 4);
  return out;
}

void validate_mesh(TriangleMesh& mesh, bool allow_open) {
  require(!mesh.triangles.empty(), "mesh: no triangles");
  for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int i = mesh.triangles[t][k];
      require(i >= 0 && i < (int)mesh.vertices.size(), "mesh: vertex index out of range");
    }
    require(mesh.area(t) > 1e-300, "mesh: degenerate triangle " + std::to_string(t));
  }

  auto edges = edge_triangles(mesh);
  bool open = false;
  for (const auto& [k, ts] : edges) {
    if (ts.size() == 1) open = true;
    require(ts.size() <= 2, "mesh: non-manifold edge shared by " + std::to_string(ts.size()) +
                                " triangles");
  }
  require(allow_open || !open, "mesh: open boundary edge (closed surface required)");

  // orientation repair by breadth-first propagation within each component
  int nt = mesh.triangles.size();
  std::vector<int> component(nt, -1);
  int ncomp = 0;
  for (int seed = 0; seed < nt; ++seed) {
    if (component[seed] >= 0) continue;
    int comp = ncomp++;
    std::deque<int> queue{seed};
    component[seed] = comp;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int k = 0; k < 3; ++k) {
        int a = mesh.triangles[t][k], b = mesh.triangles[t][(k + 1) % 3];
        for (int u : edges[ekey(a, b)]) {
          if (u == t) continue;
          bool same_dir = directed_edge_pos(mesh.triangles[u], a, b) >= 0;
          if (component[u] < 0) {
            if (same_dir) std::swap(mesh.triangles[u][1], mesh.triangles[u][2]);
            component[u] = comp;
            queue.push_back(u);
          } else {
            bool now_same = directed_edge_pos(mesh.triangles[u], a, b) >= 0;
            require(!now_same, "mesh: orientation conflict, surface not orientable");
          }
        }
      }
    }
  }

  if (open) return;

  // normalize closed components: outward at even nesting depth, flipped at odd
  for (int c = 0; c < ncomp; ++c) {
    double vol = 0.0;
    Vec3 probe = Vec3::Zero();
    bool have_probe = false;
    for (int t = 0; t < nt; ++t) {
      if (component[t] != c) continue;
      Vec3 a = mesh.tri_vertex(t, 0), b = mesh.tri_vertex(t, 1), d = mesh.tri_vertex(t, 2);
      vol += a.dot(b.cross(d)) / 6.0;
      if (!have_probe) {
        probe = mesh.centroid(t);
        have_probe = true;
      }
    }
    int depth = 0;
    Vec3 dir(0.577350269189626, 0.577350269189626, 0.577350269189626);
    for (int t = 0; t < nt; ++t) {
      if (component[t] == c) continue;
      if (ray_hits_triangle(probe, dir, mesh.tri_vertex(t, 0), mesh.tri_vertex(t, 1),
                            mesh.tri_vertex(t, 2)))
        ++depth;
    }
    bool want_positive = depth % 2 == 0;
    require(std::abs(vol) > 1e-300, "mesh: closed component with zero volume");
    if ((vol > 0) != want_positive)
      for (int t = 0; t < nt; ++t)
        if (component[t] == c) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);
  }
  require(mesh.signed_volume() > 0.0, "mesh: inward orientation not repairable");
}

TriangleMesh load_mesh(const std::string& path, const Material& material) {
  std::ifstream in(path);
  require(in.good(), "load_mesh: cannot open " + path);
  TriangleMesh mesh;
  mesh.material = material;
  std::string line;
  long nv = -1, nt = -1;
  auto next_tokens = [&](std::istringstream& ss) -> bool {
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream tmp(line);
      std::string tok;
      if (tmp >> tok) {
        ss = std::istringstream(line);
        return true;
      }
    }
    return false;
  };
  std::istringstream ss;
  require(next_tokens(ss), "load_mesh: empty file");
  std::string kw;
  ss >> kw >> nv >> nt;
  require(kw == "counts" && nv > 0 && nt > 0 && !ss.fail(), "load_mesh: bad counts line");
  for (long i = 0; i < nv; ++i) {
    require(next_tokens(ss), "load_mesh: truncated vertex list");
    double x, y, z;
    ss >> kw >> x >> y >> z;
    require(kw == "v" && !ss.fail(), "load_mesh: bad vertex line");
    mesh.vertices.push_back(Vec3(x, y, z));
  }
  for (long i = 0; i < nt; ++i) {
    require(next_tokens(ss), "load_mesh: truncated triangle list");
    long a, b, c;
    ss >> kw >> a >> b >> c;
    require(kw == "t" && !ss.fail(), "load_mesh: bad triangle line");
    mesh.triangles.push_back({(int)a, (int)b, (int)c});
  }
  validate_mesh(mesh, /*allow_open=*/false);
  return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "save_mesh: cannot open " + path);
  out << "counts " << mesh.vertices.size() << " " << mesh.triangles.size() << "\n";
  out.precision(17);
  for (const auto& v : mesh.vertices) out << "v " << v[0] << " " << v[1] << " " << v[2] << "\n";
  for (const auto& t : mesh.triangles) out << "t " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

TriangleMesh mesh_sphere(double radius, int subdivisions, const Material& material) {
  require(radius > 0 && subdivisions >= 0, "mesh_sphere: bad parameters");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = ekey(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back(0.5 * (v[a] + v[b]));
      midpoint[key] = (int)v.size() - 1;
      return (int)v.size() - 1;
    };
    std::vector<std::array<int, 3>> nf;
    for (auto& t : f) {
      int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      nf.push_back({t[0], ab, ca});
      nf.push_back({t[1], bc, ab});
      nf.push_back({t[2], ca, bc});
      nf.push_back({ab, bc, ca});
    }
    f = std::move(nf);
  }
  TriangleMesh mesh;
  mesh.material = material;
  for (auto& p : v) mesh.vertices.push_back(radius * p.normalized());
  mesh.triangles = f;
  validate_mesh(mesh, /*allow_open=*/false);
  return mesh;
}

TriangleMesh mesh_plate(double lx, double ly, int nx, int ny, double z0) {
  require(lx > 0 && ly > 0 && nx >= 1 && ny >= 1, "mesh_plate: bad parameters");
  TriangleMesh mesh;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.push_back(Vec3(-lx / 2 + lx * i / nx, -ly / 2 + ly * j / ny, z0));
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  validate_mesh(mesh, /*allow_open=*/true);
  return mesh;
}

TriangleMesh mesh_strip(double lz, double wy, int nz, int nw) {
  require(lz > 0 && wy > 0 && nz >= 1 && nw >= 1, "mesh_strip: bad parameters");
  TriangleMesh mesh;
  for (int j = 0; j <= nz; ++j)
    for (int i = 0; i <= nw; ++i)
      mesh.vertices.push_back(Vec3(0.0, -wy / 2 + wy * i / nw, -lz / 2 + lz * j / nz));
  auto id = [nw](int i, int j) { return j * (nw + 1) + i; };
  for (int j = 0; j < nz; ++j)
    for (int i = 0; i < nw; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  validate_mesh(mesh, /*allow_open=*/true);
  return mesh;
}

TriangleMesh mesh_paraboloid(double focal_length, double aperture_radius, int nr, int nphi) {
  require(focal_length > 0 && aperture_radius > 0 && nr >= 1 && nphi >= 3,
          "mesh_paraboloid: bad parameters");
  TriangleMesh mesh;
  // apex at z = -focal_length so the focus is at the origin
  auto surf = [&](double rho, double phi) {
    return Vec3(rho * std::cos(phi), rho * std::sin(phi),
                rho * rho / (4.0 * focal_length) - focal_length);
  };
  mesh.vertices.push_back(surf(0, 0));
  for (int i = 1; i <= nr; ++i) {
    double rho = aperture_radius * i / nr;
    for (int j = 0; j < nphi; ++j) mesh.vertices.push_back(surf(rho, 2 * pi * j / nphi));
  }
  auto ring = [&](int i, int j) { return 1 + (i - 1) * nphi + (j % nphi); };
  for (int j = 0; j < nphi; ++j) mesh.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < nr; ++i)
    for (int j = 0; j < nphi; ++j) {
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      mesh.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  validate_mesh(mesh, /*allow_open=*/true);
  return mesh;
}

TriangleMesh transform_mesh(const TriangleMesh& mesh, const Eigen::Matrix3d& rot, const Vec3& shift) {
  TriangleMesh out = mesh;
  for (auto& v : out.vertices) v = rot * v + shift;
  return out;
}

TriangleMesh flip_orientation(const TriangleMesh& mesh) {
  TriangleMesh out = mesh;
  for (auto& t : out.triangles) std::swap(t[1], t[2]);
  return out;
}

TriangleMesh merge_meshes(const TriangleMesh& a, const TriangleMesh& b) {
  TriangleMesh out = a;
  int off = (int)a.vertices.size();
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& t : b.triangles) out.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
  return out;
}

EnclosingRadii enclosing_radii(const TriangleMesh& antenna, const TriangleMesh& structure,
                               const Vec3& antenna_origin) {
  require(!antenna.vertices.empty() && !structure.vertices.empty(), "enclosing_radii: empty mesh");
  EnclosingRadii r;
  r.r_a = antenna.enclosing_radius(antenna_origin);
  r.r_b = structure.enclosing_radius(Vec3::Zero());
  require(r.r_a > 0.0, "enclosing_radii: zero antenna radius");
  r.kappa = r.r_b / r.r_a;
  return r;
}

}  // namespace hem
