#pragma once

#include "hem/coupling.hpp"
#include "hem/mom.hpp"
#include "hem/waves.hpp"

namespace hem {

// Far fields normalized by e^{-j k0 r} / r: F(rhat) = lim r e^{+j k0 r} E.
struct PatternCut {
  std::vector<double> theta, phi;  // radians
  VecC e_theta, e_phi;             // volts
  VecR gain_dbi;                   // filled by compute_gain
  VecR rcs_dbsm;                   // filled by compute_rcs
  int size() const { return (int)theta.size(); }
  Vec3 rhat(int i) const;
};

// Closed phi-cut: theta sweeps [0, 2pi) at fixed phi (the lower half maps to
// phi + pi), step_deg spacing.
PatternCut make_phi_cut(double phi_deg, double step_deg = 1.0);
// theta in [0, pi] at fixed phi.
PatternCut make_half_cut(double phi_deg, double step_deg = 1.0);

void far_from_currents(const VecC& currents, const ImpedanceMatrix& zmat, PatternCut& cut);
// accumulate = add to existing fields instead of overwriting
void far_from_currents(const VecC& currents, const ImpedanceMatrix& zmat, PatternCut& cut,
                       bool accumulate);

// Outgoing-wave far field, antenna frame applied as rotation plus the
// e^{+j k0 rhat.origin} offset phase.
void far_from_waves(const CoeffVector& f, const AntennaFrame& frame, double k0, PatternCut& cut,
                    bool accumulate = false);

PatternCut superpose(const PatternCut& a, const PatternCut& b);

// gain referenced to accepted power (watts); pass radiated power instead to
// get directivity
void compute_gain(PatternCut& cut, double reference_power_w);
void compute_rcs(PatternCut& cut, double incident_amplitude);

void save_pattern_csv(const PatternCut& cut, const std::string& path);
PatternCut load_pattern_csv(const std::string& path);

}  // namespace hem
