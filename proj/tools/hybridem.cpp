#include <CLI11.hpp>
#include <iostream>

#include "hem/farfield.hpp"
#include "hem/gsm.hpp"
#include "hem/scenario.hpp"
#include "hem/tmatrix.hpp"

using namespace hem;

int main(int argc, char** argv) {
  CLI::App app{"hybridem: hybrid MoM + generalized-scattering-matrix solver"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a scenario file");
  std::string scenario_path;
  run->add_option("scenario", scenario_path, "scenario config file")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "compare two run output directories");
  std::string dir_a, dir_b, tol_spec;
  cmp->add_option("dirA", dir_a)->required();
  cmp->add_option("dirB", dir_b)->required();
  cmp->add_option("--tol", tol_spec, "tolerances, e.g. gamma=2e-2,pattern_db=0.5");

  // gsm subcommands
  auto* gsm = app.add_subcommand("gsm", "antenna GSM utilities");
  auto* gsm_extract = gsm->add_subcommand("extract", "characterize a PEC antenna mesh");
  std::string ant_mesh, gsm_out;
  double frequency = 0, z_ref = 50, iota = 2, port_x = 0, port_y = 0, port_z = 0;
  gsm_extract->add_option("mesh", ant_mesh)->required();
  gsm_extract->add_option("out", gsm_out)->required();
  gsm_extract->add_option("--frequency", frequency, "Hz")->required();
  gsm_extract->add_option("--z-ref", z_ref, "port reference impedance, ohm");
  gsm_extract->add_option("--iota", iota, "truncation accuracy parameter");
  gsm_extract->add_option("--port-x", port_x);
  gsm_extract->add_option("--port-y", port_y);
  gsm_extract->add_option("--port-z", port_z);

  auto* gsm_transform_cmd = gsm->add_subcommand("transform", "reposition a stored GSM");
  std::string gsm_in, gsm_tr_out;
  double delta = 0, e_alpha = 0, e_beta = 0, e_gamma = 0;
  gsm_transform_cmd->add_option("in", gsm_in)->required();
  gsm_transform_cmd->add_option("out", gsm_tr_out)->required();
  gsm_transform_cmd->add_option("--delta", delta, "z displacement, m");
  gsm_transform_cmd->add_option("--alpha-deg", e_alpha);
  gsm_transform_cmd->add_option("--beta-deg", e_beta);
  gsm_transform_cmd->add_option("--gamma-deg", e_gamma);

  auto* gsm_info = gsm->add_subcommand("info", "print GSM header and norms");
  std::string gsm_info_in;
  gsm_info->add_option("in", gsm_info_in)->required();

  // mesh subcommands
  auto* mesh = app.add_subcommand("mesh", "mesh utilities");
  auto* mesh_sphere_cmd = mesh->add_subcommand("sphere", "write an icosphere mesh");
  std::string mesh_out;
  double radius = 1.0;
  int subdiv = 2;
  mesh_sphere_cmd->add_option("out", mesh_out)->required();
  mesh_sphere_cmd->add_option("--radius", radius, "m");
  mesh_sphere_cmd->add_option("--subdiv", subdiv);
  auto* mesh_check = mesh->add_subcommand("check", "validate a mesh file");
  std::string mesh_in;
  mesh_check->add_option("in", mesh_in)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Scenario sc = parse_scenario(scenario_path);
      RunReport rep = run_scenario(sc);
      std::cout << "wrote " << rep.outputs.size() << " files, " << rep.cache_hits
                << " cache hits\n";
      for (const auto& f : rep.outputs) std::cout << "  " << f << "\n";
      return 0;
    }
    if (*cmp) {
      CompareTolerance tol;
      if (!tol_spec.empty()) {
        std::istringstream ss(tol_spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto eq = item.find('=');
          require(eq != std::string::npos, "bad tolerance spec " + item);
          std::string key = item.substr(0, eq);
          double val = std::stod(item.substr(eq + 1));
          if (key == "gamma")
            tol.gamma_abs = val;
          else if (key == "pattern_db")
            tol.pattern_db = val;
          else
            throw ConfigError("unknown tolerance key " + key);
        }
      }
      CompareReport rep = compare_runs(dir_a, dir_b, tol);
      std::cout << rep.detail << (rep.pass ? "PASS\n" : "FAIL\n");
      return rep.pass ? 0 : 3;
    }
    if (*gsm_extract) {
      TriangleMesh m = load_mesh(ant_mesh, Material::pec());
      RwgBasis basis = build_rwg(m);
      DeltaGapPort port;
      port.edge = find_edge_near(basis, Vec3(port_x, port_y, port_z), Vec3::UnitY());
      port.z_ref = z_ref;
      double k0 = 2.0 * pi * frequency / c0;
      int l_max = truncation_degree(k0, m.enclosing_radius(), iota);
      Gsm g = gsm_from_mom_antenna(m, basis, port, frequency, l_max);
      save_gsm(g, gsm_out);
      std::cout << "GSM: l_max=" << g.l_max << " waves=" << g.n_wavefuncs()
                << " |Gamma|=" << std::abs(g.gamma(0, 0)) << "\n";
      return 0;
    }
    if (*gsm_transform_cmd) {
      Gsm g = load_gsm(gsm_in);
      double d2r = pi / 180.0;
      Gsm g2 = gsm_transform(g, delta, e_alpha * d2r, e_beta * d2r, e_gamma * d2r);
      save_gsm(g2, gsm_tr_out);
      std::cout << "transformed GSM written to " << gsm_tr_out << "\n";
      return 0;
    }
    if (*gsm_info) {
      Gsm g = load_gsm(gsm_info_in);
      std::cout << "ports=" << g.n_ports() << " l_max=" << g.l_max << " waves=" << g.n_wavefuncs()
                << " frequency=" << g.frequency << " Hz\n"
                << "|Gamma|=" << (g.n_ports() ? std::abs(g.gamma(0, 0)) : 0.0)
                << " ||T||=" << g.t.norm() << " ||S-1||=" << (g.s - MatC::Identity(g.s.rows(), g.s.cols())).norm()
                << "\n";
      return 0;
    }
    if (*mesh_sphere_cmd) {
      save_mesh(mesh_sphere(radius, subdiv), mesh_out);
      std::cout << "wrote " << mesh_out << "\n";
      return 0;
    }
    if (*mesh_check) {
      TriangleMesh m = load_mesh(mesh_in, Material::pec());
      RwgBasis basis = build_rwg(m);
      std::cout << "vertices=" << m.vertices.size() << " triangles=" << m.triangles.size()
                << " rwg=" << basis.size() << " closed=" << (m.closed() ? "yes" : "no")
                << " volume=" << m.signed_volume() << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
