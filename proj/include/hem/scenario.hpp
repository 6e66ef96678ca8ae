#pragma once

#include <map>
#include <string>
#include <vector>

#include "hem/types.hpp"

namespace hem {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

enum class SolverMethod { MomGsm, GsmPo, GsmTAnalytic, GsmTMom };

struct StructureSpec {
  std::string mesh_path;          // file-based structure
  std::string shape;              // or programmatic: "sphere" | "shell"
  double radius = 0, r_in = 0, r_out = 0;
  int subdiv = 2;
  bool pec = true;
  cdouble eps_r{1.0, 0.0};
};

struct AntennaSpec {
  std::string gsm_file;           // precomputed GSM
  std::string mesh_path;          // or extract from a PEC mesh with a port
  std::string shape;              // or "strip_dipole length=.. width=.."
  double length = 0, width = 0;
  int segments = 16;
  double z_ref = 50.0;
  double mie_radius = 0;          // or analytic PEC-sphere scatterer
  double r_a = 0;                 // enclosing radius (truncation + validity)
  double iota = 2.0;
  double delta = 0;               // pose r_g = Rz(a)Ry(b)Rz(g) (r_l + delta z)
  double euler_deg[3] = {0, 0, 0};
};

struct ExcitationSpec {
  bool has_port = false;
  cdouble port_v{1.0, 0.0};
  bool has_plane_wave = false;
  double pw_theta_deg = 0, pw_phi_deg = 0;
  std::string pw_pol = "theta";
  double pw_amplitude = 1.0;
};

struct ProductSpec {
  std::string kind;  // "sparams" | "pattern" | "rcs"
  double phi_deg = 0;
  double step_deg = 1.0;
};

struct Scenario {
  SolverMethod method = SolverMethod::MomGsm;
  int workers = 1;
  StructureSpec structure;
  AntennaSpec antenna;
  ExcitationSpec excitation;
  std::vector<double> frequencies;
  std::string output_dir = "out";
  std::vector<ProductSpec> products;
  std::string cache_dir;  // empty: env HYBRIDEM_CACHE, else no cache
};

Scenario parse_scenario(const std::string& path);

struct FrequencyTiming {
  double frequency = 0;
  double assembly_s = 0, factorization_s = 0, coupling_s = 0, update_s = 0, solve_s = 0;
  bool cache_hit = false;
};

struct RunReport {
  std::vector<FrequencyTiming> timings;
  std::vector<std::string> outputs;  // manifest of written files
  int cache_hits = 0;
};

RunReport run_scenario(const Scenario& scenario);

struct CompareTolerance {
  double gamma_abs = 2e-2;     // |dGamma| on sparams
  double pattern_db = 0.5;     // field patterns, dB above the -40 dB floor
};

struct CompareReport {
  double max_gamma_dev = 0;
  double max_pattern_db = 0;
  bool pass = true;
  std::string detail;
};

CompareReport compare_runs(const std::string& dir_a, const std::string& dir_b,
                           const CompareTolerance& tol);

}  // namespace hem
