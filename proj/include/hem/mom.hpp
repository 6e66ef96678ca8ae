#pragma once

#include <functional>
#include <optional>

#include "hem/rwg.hpp"
#include "hem/types.hpp"

namespace hem {

struct PlaneWave {
  Vec3 khat = -Vec3::UnitZ();
  CVec3 ehat = CVec3::UnitX();
  cdouble amplitude{1.0, 0.0};  // V/m
};

enum class Formulation { EFIE, PMCHWT };

// Galerkin impedance matrix. EFIE: Z = j k0 Z0 L0 (N x N). PMCHWT blocks
// over [I_e; j I_m]:
//   [ j(k0 Z0 L0 + kd Zd Ld)   -j(K0 + Kd) ]
//   [ -j(K0 + Kd)              j(k0/Z0 L0 + kd/Zd Ld) ]
// K blocks are principal-value only: the +-n x J/2 residues of the interior
// and exterior traces cancel in this formulation.
struct ImpedanceMatrix {
  MatC z;
  Formulation formulation = Formulation::EFIE;
  double frequency = 0.0;
  double k0 = 0.0;
  cdouble k_d{0.0, 0.0};
  cdouble z_d{0.0, 0.0};
  const TriangleMesh* mesh = nullptr;
  const RwgBasis* basis = nullptr;

  int unknowns() const { return (int)z.rows(); }
};

ImpedanceMatrix assemble_pmchwt(const TriangleMesh& mesh, const RwgBasis& basis, double frequency);
ImpedanceMatrix assemble_efie(const TriangleMesh& mesh, const RwgBasis& basis, double frequency);

// Excitation column <psi_n, E^i> (EFIE) or [<psi,E^i>; j<psi,H^i>] (PMCHWT).
VecC excitation_plane_wave(const RwgBasis& basis, Formulation formulation, const PlaneWave& pw,
                           double k0);

// Delta-gap port drive: V_n = gap_voltage * edge_length at the port edge.
VecC excitation_delta_gap(const RwgBasis& basis, Formulation formulation, int port_edge,
                          cdouble gap_voltage);

// Cached LU with a residual guard (iterative refinement up to 3 passes,
// accepts at relative residual 1e-10). Factors are held explicitly so they
// can be persisted and reloaded.
class LuSolver {
 public:
  LuSolver() = default;
  explicit LuSolver(const MatC& a) { factor(a); }
  void factor(const MatC& a);
  MatC solve(const MatC& rhs) const;
  const MatC& matrix() const { return a_; }
  bool factored() const { return factored_; }

  void save_factors(const std::string& lu_path, const std::string& piv_path) const;
  // a must be the matrix the stored factors were computed from
  void load_factors(const MatC& a, const std::string& lu_path, const std::string& piv_path);

 private:
  MatC apply_factors(const MatC& rhs) const;
  MatC a_;
  MatC lu_;
  std::vector<int64_t> perm_;  // (P b)[i] = b[perm[i]]
  bool factored_ = false;
};

// Multi-RHS direct solve with residual verification.
MatC solve_direct(const ImpedanceMatrix& zmat, const MatC& rhs);

// Unpreconditioned CG on the normal equations; matrix supplied as a
// matrix-vector product. Exposed for matrix-free experiments, not used by
// the direct pipeline.
VecC solve_cgnr(const std::function<VecC(const VecC&)>& matvec,
                const std::function<VecC(const VecC&)>& matvec_adj, const VecC& rhs, double tol,
                int max_iter);

enum class FieldRegion { Exterior, Interior };

struct NearFields {
  std::vector<CVec3> e, h;
};

// Fields radiated by the surface currents at points off the surface.
// Exterior: free-space kernel with (J, M). Interior (penetrable body):
// dielectric kernel with (-J, -M) per the equivalence construction.
NearFields radiate_near(const VecC& currents, const ImpedanceMatrix& zmat,
                        const std::vector<Vec3>& points, FieldRegion region);

}  // namespace hem
