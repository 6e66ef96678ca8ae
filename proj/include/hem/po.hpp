#pragma once

#include "hem/coupling.hpp"
#include "hem/farfield.hpp"
#include "hem/gsm.hpp"

namespace hem {

enum class Shadowing { None, BackFaceCull };

// Physical-optics reflection operator of a PEC structure seen from the
// antenna frame: a^s = rho f with
//   rho[a,b] = -2 j k0^2 < u_a^(4), nhat x u_bar(b)^(4) >_illuminated
struct PoRho {
  MatC rho;
  int l_max = 0;
  AntennaFrame frame;
  Shadowing shadowing = Shadowing::BackFaceCull;
};

PoRho po_rho(const TriangleMesh& mesh, const AntennaFrame& frame, double k0, int l_max,
             Shadowing shadowing = Shadowing::BackFaceCull);

// f = [1 - (S-1)/2 rho]^-1 T v; warns when the Neumann spectral radius
// estimate exceeds 1 (feedback interpretation degrades).
CoeffVector po_outgoing(const Gsm& gsm, const PoRho& rho, const VecC& v);

// full-coupled reflection: Gamma + R/2 rho [1 - (S-1)/2 rho]^-1 T
MatC po_gamma_fullcoupled(const Gsm& gsm, const PoRho& rho);
// single-bounce form: Gamma + R/2 rho T
MatC po_gamma_firstorder(const Gsm& gsm, const PoRho& rho);

// Far field of the PO currents J = 2 nhat x H^a(f) over the illuminated
// triangles, added onto the cut (pair with far_from_waves for the total).
void po_far_field(const CoeffVector& f, const TriangleMesh& mesh, const AntennaFrame& frame,
                  double k0, Shadowing shadowing, PatternCut& cut, bool accumulate = false);

}  // namespace hem
