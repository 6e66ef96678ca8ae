#pragma once

#include "hem/coupling.hpp"
#include "hem/gsm.hpp"
#include "hem/mom.hpp"

namespace hem {

struct HybridOptions {
  bool build_direct = true;  // form Z~ = Z + U4^t (S-1)/2 U4 and factor it
  bool build_smw = true;     // cache LU(Z) and G = U4 Z^-1 U4^t
  std::string cache_dir;     // when set, LU(Z) and G are persisted per content hash
  bool verify_entries = true;  // spot-check Z~ entries against the triple product
};

// Structure + antenna system. The Z factorization and G depend only on the
// structure, frequency, and antenna frame; swapping the antenna rebuilds only
// the n_wave-sized pieces (set_gsm).
class HybridSystem {
 public:
  const ImpedanceMatrix* zmat = nullptr;
  CouplingMatrix u4;
  Gsm gsm;
  MatC shalf;             // (S-1)/2
  bool identity_s = false;

  bool have_direct = false;
  MatC ztilde;
  LuSolver lu_ztilde;

  bool have_smw = false;
  LuSolver lu_z;
  MatC g;  // U4 Z^-1 U4^t
  MatC m;  // 1 + G (S-1)/2
  LuSolver lu_m;

  bool cache_hit = false;
};

HybridSystem build_hybrid(const ImpedanceMatrix& zmat, const CouplingMatrix& u4, const Gsm& gsm,
                          const HybridOptions& opt = {});

// Antenna swap on cached structure factors; refreshes M (and the direct
// factorization only if it was built).
void hybrid_set_gsm(HybridSystem& sys, const Gsm& gsm, bool refresh_direct = false);

struct HybridExcitation {
  VecC v_inc;          // <psi, incident fields> (may be empty)
  CoeffVector a_inc;   // incident regular waves at the antenna (may be empty)
  VecC v;              // port drive (may be empty)
};

struct HybridSolution {
  VecC currents;       // structure currents I
  CoeffVector a_total; // -U4 I + a_inc
  CoeffVector f;       // antenna outgoing waves
  VecC w;              // port outgoing waves
};

HybridSolution solve_hybrid(const HybridSystem& sys, const HybridExcitation& exc);
// Sherman-Morrison-Woodbury path on the cached (LU(Z), G) pair.
HybridSolution smw_solve(const HybridSystem& sys, const HybridExcitation& exc);

// Effective port S-parameters Gamma - (1/2) R U4 Z~^-1 U4^t T.
MatC effective_sparams(const HybridSystem& sys);

// digest used for the structure-side disk cache
uint64_t hybrid_cache_key(const ImpedanceMatrix& zmat, const CouplingMatrix& u4);

}  // namespace hem
