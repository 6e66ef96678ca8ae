#include "hem/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "hem/farfield.hpp"
#include "hem/hybrid.hpp"
#include "hem/po.hpp"
#include "hem/tmatrix.hpp"

namespace hem {

namespace {

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

struct KvSection {
  std::map<std::string, std::string> kv;
  const std::string& get(const std::string& key, const std::string& fallback = "") const {
    auto it = kv.find(key);
    if (it == kv.end()) {
      static thread_local std::string fb;
      fb = fallback;
      return fb;
    }
    return it->second;
  }
  double num(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  }
};

std::map<std::string, KvSection> parse_sections(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("scenario: cannot open " + path);
  std::map<std::string, KvSection> sections;
  std::string cur = "";
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[' && line.back() == ']') {
      cur = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("scenario: expected key = value: " + line);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    sections[cur].kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::istringstream ss(s);
  double x;
  while (ss >> x) out.push_back(x);
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& path) {
  auto sec = parse_sections(path);
  Scenario sc;

  const KvSection& top = sec[""];
  std::string method = top.get("method");
  if (method == "mom_gsm")
    sc.method = SolverMethod::MomGsm;
  else if (method == "gsm_po")
    sc.method = SolverMethod::GsmPo;
  else if (method == "gsm_t_analytic")
    sc.method = SolverMethod::GsmTAnalytic;
  else if (method == "gsm_t_mom")
    sc.method = SolverMethod::GsmTMom;
  else
    throw ConfigError("scenario: method must be one of mom_gsm, gsm_po, gsm_t_analytic, gsm_t_mom");
  sc.workers = (int)top.num("workers", 1);
  sc.cache_dir = top.get("cache_dir");

  const KvSection& st = sec["structure"];
  sc.structure.mesh_path = st.get("mesh");
  sc.structure.shape = st.get("shape");
  sc.structure.radius = st.num("radius", 0);
  sc.structure.r_in = st.num("r_in", 0);
  sc.structure.r_out = st.num("r_out", 0);
  sc.structure.subdiv = (int)st.num("subdiv", 2);
  std::string mat = st.get("material", "pec");
  if (mat == "pec") {
    sc.structure.pec = true;
  } else {
    std::istringstream ms(mat);
    std::string kind;
    double er, tand;
    ms >> kind >> er >> tand;
    if (kind != "penetrable" || ms.fail())
      throw ConfigError("scenario: material must be 'pec' or 'penetrable <eps_r> <tan_delta>'");
    sc.structure.pec = false;
    sc.structure.eps_r = cdouble(er, -er * tand);
  }
  if (sc.structure.mesh_path.empty() && sc.structure.shape.empty())
    throw ConfigError("scenario: [structure] needs mesh or shape");

  const KvSection& an = sec["antenna"];
  sc.antenna.gsm_file = an.get("gsm_file");
  sc.antenna.mesh_path = an.get("mesh");
  sc.antenna.shape = an.get("shape");
  sc.antenna.length = an.num("length", 0);
  sc.antenna.width = an.num("width", 0);
  sc.antenna.segments = (int)an.num("segments", 16);
  sc.antenna.z_ref = an.num("z_ref", 50.0);
  sc.antenna.mie_radius = an.num("mie_radius", 0);
  sc.antenna.r_a = an.num("r_a", 0);
  sc.antenna.iota = an.num("iota", 2.0);
  sc.antenna.delta = an.num("delta", 0);
  auto euler = parse_numbers(an.get("euler_deg", "0 0 0"));
  if (euler.size() != 3) throw ConfigError("scenario: euler_deg needs three angles");
  for (int i = 0; i < 3; ++i) sc.antenna.euler_deg[i] = euler[i];

  const KvSection& ex = sec["excitation"];
  if (!ex.get("port").empty()) {
    auto pv = parse_numbers(ex.get("port"));
    sc.excitation.has_port = true;
    sc.excitation.port_v = cdouble(pv.size() > 0 ? pv[0] : 1.0, pv.size() > 1 ? pv[1] : 0.0);
  }
  if (!ex.get("plane_wave_theta_deg").empty() || !ex.get("plane_wave").empty()) {
    sc.excitation.has_plane_wave = true;
    sc.excitation.pw_theta_deg = ex.num("plane_wave_theta_deg", 0);
    sc.excitation.pw_phi_deg = ex.num("plane_wave_phi_deg", 0);
    sc.excitation.pw_pol = ex.get("plane_wave_pol", "theta");
    sc.excitation.pw_amplitude = ex.num("plane_wave_amplitude", 1.0);
  }

  auto freqs = parse_numbers(sec["sweep"].get("frequencies"));
  if (freqs.empty()) throw ConfigError("scenario: [sweep] frequencies required");
  sc.frequencies = freqs;

  const KvSection& outp = sec["output"];
  sc.output_dir = outp.get("dir", "out");
  std::istringstream ps(outp.get("products", "sparams"));
  std::string tok;
  while (ps >> tok) {
    ProductSpec p;
    if (tok == "sparams") {
      p.kind = "sparams";
    } else if (tok.rfind("pattern", 0) == 0 || tok.rfind("rcs", 0) == 0) {
      p.kind = tok.rfind("rcs", 0) == 0 ? "rcs" : "pattern";
      auto at = tok.find("phi=");
      if (at != std::string::npos) p.phi_deg = std::stod(tok.substr(at + 4));
    } else {
      throw ConfigError("scenario: unknown product " + tok);
    }
    sc.products.push_back(p);
  }

  // method/structure compatibility
  if (sc.method == SolverMethod::GsmTAnalytic && sc.structure.shape.empty())
    throw ConfigError("scenario: gsm_t_analytic requires a spherical structure shape");
  if (sc.method == SolverMethod::GsmPo && !sc.structure.pec)
    throw ConfigError("scenario: gsm_po requires a PEC structure");
  return sc;
}

namespace {

TriangleMesh build_structure_mesh(const StructureSpec& spec) {
  Material mat = spec.pec ? Material::pec() : Material::penetrable(spec.eps_r);
  if (!spec.mesh_path.empty()) return load_mesh(spec.mesh_path, mat);
  if (spec.shape == "sphere") {
    require(spec.radius > 0, "scenario: sphere radius required");
    return mesh_sphere(spec.radius, spec.subdiv, mat);
  }
  if (spec.shape == "shell") {
    require(spec.r_in > 0 && spec.r_out > spec.r_in, "scenario: shell radii required");
    TriangleMesh outer = mesh_sphere(spec.r_out, spec.subdiv, mat);
    TriangleMesh inner = flip_orientation(mesh_sphere(spec.r_in, spec.subdiv, mat));
    TriangleMesh shell = merge_meshes(outer, inner);
    shell.material = mat;
    return shell;
  }
  throw ConfigError("scenario: unknown structure shape " + spec.shape);
}

SphericalBody analytic_body(const StructureSpec& spec) {
  SphericalBody body;
  if (spec.shape == "sphere") {
    body.radii = {spec.radius};
    body.media = {spec.pec ? Material::pec() : Material::penetrable(spec.eps_r)};
  } else if (spec.shape == "shell") {
    body.radii = {spec.r_in, spec.r_out};
    body.media = {Material::penetrable(1.0), Material::penetrable(spec.eps_r)};
  } else {
    throw ConfigError("scenario: analytic structure must be sphere or shell");
  }
  return body;
}

struct AntennaModel {
  Gsm gsm;
  double r_a = 0;
  TriangleMesh mesh;  // kept when extracted (for reporting only)
  bool from_mesh = false;
};

AntennaModel build_antenna(const AntennaSpec& spec, double frequency) {
  AntennaModel model;
  double k0 = 2.0 * pi * frequency / c0;
  if (!spec.gsm_file.empty()) {
    model.gsm = load_gsm(spec.gsm_file);
    model.r_a = spec.r_a;
  } else if (spec.mie_radius > 0) {
    int l_max = truncation_degree(k0, spec.mie_radius, spec.iota);
    SphericalBody body{{spec.mie_radius}, {Material::pec()}};
    model.gsm = gsm_from_mie_sphere(body, k0, l_max);
    model.r_a = spec.mie_radius;
  } else {
    TriangleMesh mesh;
    if (!spec.mesh_path.empty()) {
      mesh = load_mesh(spec.mesh_path, Material::pec());
    } else if (spec.shape == "strip_dipole") {
      require(spec.length > 0 && spec.width > 0, "scenario: strip_dipole needs length and width");
      mesh = mesh_strip(spec.length, spec.width, spec.segments, 1);
    } else {
      throw ConfigError("scenario: [antenna] needs gsm_file, mie_radius, mesh, or shape");
    }
    model.r_a = spec.r_a > 0 ? spec.r_a : mesh.enclosing_radius();
    int l_max = truncation_degree(k0, model.r_a, spec.iota);
    RwgBasis basis = build_rwg(mesh);
    DeltaGapPort port;
    port.edge = find_edge_near(basis, Vec3::Zero(), Vec3::UnitY());
    port.z_ref = spec.z_ref;
    model.gsm = gsm_from_mom_antenna(mesh, basis, port, frequency, l_max);
    model.mesh = std::move(mesh);
    model.from_mesh = true;
  }
  bool posed = spec.delta != 0 || spec.euler_deg[0] != 0 || spec.euler_deg[1] != 0 ||
               spec.euler_deg[2] != 0;
  if (posed) {
    double d2r = pi / 180.0;
    model.gsm = gsm_transform(model.gsm, spec.delta, spec.euler_deg[0] * d2r,
                              spec.euler_deg[1] * d2r, spec.euler_deg[2] * d2r);
    model.r_a += std::abs(spec.delta);
  }
  return model;
}

struct FrequencyOutputs {
  cdouble gamma_eff{0, 0};
  bool has_gamma = false;
  std::vector<std::pair<ProductSpec, PatternCut>> cuts;
};

FrequencyOutputs run_frequency(const Scenario& sc, double frequency, FrequencyTiming& tm) {
  FrequencyOutputs out;
  double k0 = 2.0 * pi * frequency / c0;
  AntennaModel ant = build_antenna(sc.antenna, frequency);
  const Gsm& gsm = ant.gsm;
  int l_max = gsm.l_max;

  PlaneWave pw;
  bool want_pw = sc.excitation.has_plane_wave;
  if (want_pw) {
    double th = sc.excitation.pw_theta_deg * pi / 180.0;
    double ph = sc.excitation.pw_phi_deg * pi / 180.0;
    Vec3 khat = -Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    Vec3 eth(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
    Vec3 eph(-std::sin(ph), std::cos(ph), 0);
    pw.khat = khat;
    pw.ehat = (sc.excitation.pw_pol == "phi" ? eph : eth).cast<cdouble>();
    pw.amplitude = sc.excitation.pw_amplitude;
  }
  VecC vport;
  if (sc.excitation.has_port && gsm.n_ports() > 0) {
    vport = VecC::Constant(gsm.n_ports(), sc.excitation.port_v);
  }

  auto want_cut_products = [&]() {
    std::vector<ProductSpec> cuts;
    for (const auto& p : sc.products)
      if (p.kind != "sparams") cuts.push_back(p);
    return cuts;
  };

  if (sc.method == SolverMethod::MomGsm || sc.method == SolverMethod::GsmTMom) {
    double t0 = now_s();
    TriangleMesh mesh = build_structure_mesh(sc.structure);
    RwgBasis basis = build_rwg(mesh);
    Formulation form = sc.structure.pec ? Formulation::EFIE : Formulation::PMCHWT;
    ImpedanceMatrix zmat = sc.structure.pec ? assemble_efie(mesh, basis, frequency)
                                            : assemble_pmchwt(mesh, basis, frequency);
    tm.assembly_s = now_s() - t0;

    t0 = now_s();
    AntennaFrame frame;  // pose handled on the GSM side, frame fixed at origin
    CouplingMatrix u4 = assemble_coupling(mesh, basis, frame, k0, l_max, 4, form, ant.r_a);
    tm.coupling_s = now_s() - t0;

    if (sc.method == SolverMethod::GsmTMom) {
      t0 = now_s();
      double r_b = mesh.enclosing_radius();
      int l_ext = truncation_degree(k0, r_b, sc.antenna.iota);
      CouplingMatrix u1 = assemble_coupling(mesh, basis, frame, k0, l_ext, 1, form);
      TMatrixBlocks blocks = tmatrix_from_mom(zmat, u1, u4);
      Gsm comp = hybrid_gsm_t(gsm, blocks);
      tm.factorization_s = now_s() - t0;
      t0 = now_s();
      if (gsm.n_ports() > 0) {
        out.gamma_eff = comp.gamma(0, 0);
        out.has_gamma = true;
      }
      for (const auto& p : want_cut_products()) {
        PatternCut cut = make_phi_cut(p.phi_deg);
        CoeffVector fe = CoeffVector::zero(l_ext, CoeffKind::ExteriorOut);
        if (vport.size()) fe.values += comp.t * vport;
        if (want_pw) {
          CoeffVector ae = plane_wave_coeffs(pw.khat, pw.ehat, pw.amplitude, k0, l_ext);
          fe.values += 0.5 * (comp.s * ae.values - ae.values);
        }
        far_from_waves(fe, AntennaFrame{}, k0, cut);
        if (p.kind == "rcs")
          compute_rcs(cut, std::abs(pw.amplitude));
        else if (vport.size())
          compute_gain(cut, 0.5 * vport.squaredNorm() * (1.0 - std::norm(out.gamma_eff)));
        out.cuts.push_back({p, cut});
      }
      tm.solve_s = now_s() - t0;
      return out;
    }

    t0 = now_s();
    HybridOptions opt;
    opt.cache_dir = sc.cache_dir;
    if (opt.cache_dir.empty()) {
      const char* env = std::getenv("HYBRIDEM_CACHE");
      if (env) opt.cache_dir = env;
    }
    opt.build_direct = false;
    HybridSystem sys = build_hybrid(zmat, u4, gsm, opt);
    tm.factorization_s = now_s() - t0;
    tm.cache_hit = sys.cache_hit;

    t0 = now_s();
    HybridExcitation exc;
    if (want_pw) {
      exc.v_inc = excitation_plane_wave(basis, form, pw, k0);
      exc.a_inc = plane_wave_coeffs(pw.khat, pw.ehat, pw.amplitude, k0, l_max);
    }
    if (vport.size()) exc.v = vport;
    HybridSolution sol = solve_hybrid(sys, exc);
    if (gsm.n_ports() > 0) {
      out.gamma_eff = effective_sparams(sys)(0, 0);
      out.has_gamma = true;
    }
    for (const auto& p : want_cut_products()) {
      PatternCut cut = make_phi_cut(p.phi_deg);
      far_from_currents(sol.currents, zmat, cut);
      far_from_waves(sol.f, AntennaFrame{}, k0, cut, /*accumulate=*/true);
      if (p.kind == "rcs")
        compute_rcs(cut, std::abs(pw.amplitude));
      else if (vport.size())
        compute_gain(cut, 0.5 * vport.squaredNorm() * (1.0 - std::norm(out.gamma_eff)));
      out.cuts.push_back({p, cut});
    }
    tm.solve_s = now_s() - t0;
    return out;
  }

  if (sc.method == SolverMethod::GsmTAnalytic) {
    double t0 = now_s();
    SphericalBody body = analytic_body(sc.structure);
    double r_b = body.radii.back();
    int l_ext = truncation_degree(k0, r_b, sc.antenna.iota);
    TMatrixBlocks blocks = tmatrix_analytic_sphere(body, k0, l_max, l_ext);
    Gsm comp = hybrid_gsm_t(gsm, blocks);
    tm.factorization_s = now_s() - t0;
    t0 = now_s();
    if (gsm.n_ports() > 0) {
      out.gamma_eff = comp.gamma(0, 0);
      out.has_gamma = true;
    }
    for (const auto& p : want_cut_products()) {
      PatternCut cut = make_phi_cut(p.phi_deg);
      CoeffVector fe = CoeffVector::zero(l_ext, CoeffKind::ExteriorOut);
      if (vport.size()) fe.values += comp.t * vport;
      if (want_pw) {
        CoeffVector ae = plane_wave_coeffs(pw.khat, pw.ehat, pw.amplitude, k0, l_ext);
        fe.values += 0.5 * (comp.s * ae.values - ae.values);
      }
      far_from_waves(fe, AntennaFrame{}, k0, cut);
      if (p.kind == "rcs")
        compute_rcs(cut, std::abs(pw.amplitude));
      else if (vport.size())
        compute_gain(cut, 0.5 * vport.squaredNorm() * (1.0 - std::norm(out.gamma_eff)));
      out.cuts.push_back({p, cut});
    }
    tm.solve_s = now_s() - t0;
    return out;
  }

  // GSM + physical optics
  double t0 = now_s();
  TriangleMesh mesh = build_structure_mesh(sc.structure);
  tm.assembly_s = now_s() - t0;
  t0 = now_s();
  PoRho rho = po_rho(mesh, AntennaFrame{}, k0, l_max);
  tm.coupling_s = now_s() - t0;
  t0 = now_s();
  require(gsm.n_ports() > 0, "scenario: gsm_po needs a ported antenna");
  VecC v = vport.size() ? vport : VecC::Ones(gsm.n_ports());
  out.gamma_eff = po_gamma_fullcoupled(gsm, rho)(0, 0);
  out.has_gamma = true;
  CoeffVector f = po_outgoing(gsm, rho, v);
  for (const auto& p : want_cut_products()) {
    PatternCut cut = make_phi_cut(p.phi_deg);
    far_from_waves(f, AntennaFrame{}, k0, cut);
    po_far_field(f, mesh, AntennaFrame{}, k0, rho.shadowing, cut, /*accumulate=*/true);
    compute_gain(cut, 0.5 * v.squaredNorm() * (1.0 - std::norm(out.gamma_eff)));
    out.cuts.push_back({p, cut});
  }
  tm.solve_s = now_s() - t0;
  return out;
}

}  // namespace

RunReport run_scenario(const Scenario& sc) {
  namespace fs = std::filesystem;
  fs::create_directories(sc.output_dir);
  RunReport report;
  int nf = (int)sc.frequencies.size();
  report.timings.resize(nf);
  std::vector<FrequencyOutputs> results(nf);
  std::vector<std::string> errors(nf);

  int workers = std::max(1, std::min(sc.workers, nf));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  auto work = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= nf) return;
      report.timings[i].frequency = sc.frequencies[i];
      try {
        results[i] = run_frequency(sc, sc.frequencies[i], report.timings[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error("run_scenario: " + e);

  // merged port S-parameter table, ordered by frequency index
  bool any_gamma = false;
  for (const auto& r : results) any_gamma = any_gamma || r.has_gamma;
  if (any_gamma) {
    std::string path = sc.output_dir + "/sparams.csv";
    std::ofstream out(path);
    out << "frequency_hz,re_gamma,im_gamma,mag_db\n";
    char buf[160];
    for (int i = 0; i < nf; ++i) {
      double mag = std::abs(results[i].gamma_eff);
      std::snprintf(buf, sizeof buf, "%.10e,%.12e,%.12e,%.6f\n", sc.frequencies[i],
                    results[i].gamma_eff.real(), results[i].gamma_eff.imag(),
                    20.0 * std::log10(std::max(mag, 1e-300)));
      out << buf;
    }
    report.outputs.push_back(path);
  }
  for (int i = 0; i < nf; ++i) {
    for (auto& [spec, cut] : results[i].cuts) {
      char name[128];
      std::snprintf(name, sizeof name, "%s/%s_f%02d_phi%g.csv", sc.output_dir.c_str(),
                    spec.kind.c_str(), i, spec.phi_deg);
      save_pattern_csv(cut, name);
      report.outputs.push_back(name);
    }
    if (report.timings[i].cache_hit) ++report.cache_hits;
  }

  std::string rpt = sc.output_dir + "/report.txt";
  std::ofstream out(rpt);
  out << "frequency_hz assembly_s factorization_s coupling_s solve_s cache_hit\n";
  for (const auto& t : report.timings) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%.6e %.3f %.3f %.3f %.3f %d\n", t.frequency, t.assembly_s,
                  t.factorization_s, t.coupling_s, t.solve_s, t.cache_hit ? 1 : 0);
    out << buf;
  }
  out << "outputs:\n";
  for (const auto& f : report.outputs) out << "  " << f << "\n";
  report.outputs.push_back(rpt);
  return report;
}

CompareReport compare_runs(const std::string& dir_a, const std::string& dir_b,
                           const CompareTolerance& tol) {
  namespace fs = std::filesystem;
  CompareReport rep;
  std::ostringstream detail;

  auto spath = [](const std::string& d) { return d + "/sparams.csv"; };
  if (fs::exists(spath(dir_a)) != fs::exists(spath(dir_b)))
    throw Error("compare_runs: product mismatch (sparams present in one run only)");
  if (fs::exists(spath(dir_a))) {
    std::ifstream a(spath(dir_a)), b(spath(dir_b));
    std::string la, lb;
    std::getline(a, la);
    std::getline(b, lb);
    while (std::getline(a, la) && std::getline(b, lb)) {
      double fa, ra, ia, da, fb2, rb, ib, db;
      if (std::sscanf(la.c_str(), "%lf,%lf,%lf,%lf", &fa, &ra, &ia, &da) == 4 &&
          std::sscanf(lb.c_str(), "%lf,%lf,%lf,%lf", &fb2, &rb, &ib, &db) == 4) {
        double dev = std::abs(cdouble(ra - rb, ia - ib));
        rep.max_gamma_dev = std::max(rep.max_gamma_dev, dev);
      }
    }
    detail << "max |dGamma| = " << rep.max_gamma_dev << " (tol " << tol.gamma_abs << ")\n";
    if (rep.max_gamma_dev > tol.gamma_abs) rep.pass = false;
  }

  for (const auto& entry : fs::directory_iterator(dir_a)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("pattern", 0) != 0 && name.rfind("rcs", 0) != 0) continue;
    std::string other = dir_b + "/" + name;
    if (!fs::exists(other)) throw Error("compare_runs: product mismatch for " + name);
    PatternCut ca = load_pattern_csv(entry.path().string());
    PatternCut cb = load_pattern_csv(other);
    require(ca.size() == cb.size(), "compare_runs: cut size mismatch for " + name);
    double pa = 0, pb = 0;
    for (int i = 0; i < ca.size(); ++i) {
      pa = std::max(pa, std::sqrt(std::norm(ca.e_theta[i]) + std::norm(ca.e_phi[i])));
      pb = std::max(pb, std::sqrt(std::norm(cb.e_theta[i]) + std::norm(cb.e_phi[i])));
    }
    double floor = std::max(pa, pb) * 1e-2;  // compare above the -40 dB level
    double worst = 0;
    for (int i = 0; i < ca.size(); ++i) {
      double ma = std::sqrt(std::norm(ca.e_theta[i]) + std::norm(ca.e_phi[i]));
      double mb = std::sqrt(std::norm(cb.e_theta[i]) + std::norm(cb.e_phi[i]));
      if (ma < floor && mb < floor) continue;
      worst = std::max(worst, std::abs(20.0 * std::log10(std::max(ma, floor) /
                                                         std::max(mb, floor))));
    }
    rep.max_pattern_db = std::max(rep.max_pattern_db, worst);
    detail << name << ": max |dB| = " << worst << " (tol " << tol.pattern_db << ")\n";
    if (worst > tol.pattern_db) rep.pass = false;
  }
  rep.detail = detail.str();
  return rep;
}

}  // namespace hem
