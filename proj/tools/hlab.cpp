// hlab: generate hierarchy equations, run the verification suites, solve on
// a periodic grid, and drive the norm / separation experiments.

#include "hlab/hierarchy.hpp"
#include "hlab/phase.hpp"
#include "hlab/solutions.hpp"
#include "hlab/spaces.hpp"
#include "hlab/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace hlab;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitCheckFailure = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string now_iso() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int env_threads() {
  const char* v = std::getenv("HLAB_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::ostringstream hex;
  hex << std::hex << fnv1a(ss.str());
  return hex.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << content;
}

void write_manifest(const std::string& path, const std::string& command,
                    const json& config, const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["timestamp"] = now_iso();
  m["threads"] = env_threads();
  m["config"] = config;
  m["outputs"] = json::array();
  for (const std::string& p : outputs)
    m["outputs"].push_back({{"path", p}, {"fnv1a", file_digest(p)}});
  write_file(path, m.dump(2) + "\n");
}

Family parse_family(const std::string& name) {
  if (name == "kdv") return Family::KdV;
  if (name == "mkdv") return Family::mKdV;
  throw UsageError("unknown family '" + name + "' (kdv | mkdv)");
}

// --- gen ---------------------------------------------------------------

int cmd_gen(const std::string& family, int j, const std::string& out_prefix) {
  Family fam = parse_family(family);
  auto eq = hierarchy_equation(fam, j);
  char sym = family_symbol(fam);

  DiffPoly full = eq.dispersion_coeff * DiffPoly::var(2 * j + 1) + eq.nonlinear;
  std::string text = std::string("d_t ") + sym + " + " + full.to_string(sym) +
                     " = 0\n";

  json out;
  out["family"] = family;
  out["j"] = j;
  out["symbol"] = std::string(1, sym);
  out["dispersion_coeff"] = eq.dispersion_coeff.get_str();
  out["nonlinear"] = eq.nonlinear.to_string(sym);
  out["equation"] = std::string("d_t ") + sym + " + " + full.to_string(sym) + " = 0";

  std::string txt_path = out_prefix + ".txt";
  std::string json_path = out_prefix + ".json";
  write_file(txt_path, text);
  write_file(json_path, out.dump(2) + "\n");
  write_manifest(out_prefix + "_manifest.json", "gen",
                 json{{"family", family}, {"j", j}}, {txt_path, json_path});
  std::cout << text;
  return 0;
}

// --- verify ------------------------------------------------------------

struct Report {
  json checks = json::array();
  bool all = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    all = all && pass;
  }
};

int cmd_verify(const std::string& suite, int j, int jmax) {
  Report rep;
  if (suite == "shape") {
    for (int jj = 1; jj <= jmax; ++jj) {
      for (Family fam : {Family::KdV, Family::mKdV}) {
        bool ok = true;
        std::string detail;
        try {
          hierarchy_equation(fam, jj);
        } catch (ShapeViolation& e) {
          ok = false;
          detail = e.what();
        }
        rep.add(std::string(family_name(fam)) + " j=" + std::to_string(jj), ok,
                detail);
      }
    }
  } else if (suite == "involution") {
    for (Family fam : {Family::KdV, Family::mKdV}) {
      int lo = fam == Family::KdV ? 0 : 1;
      for (int k = lo; k <= jmax; ++k)
        for (int l = lo; l <= jmax; ++l)
          rep.add(std::string(family_name(fam)) + " k=" + std::to_string(k) +
                      " l=" + std::to_string(l),
                  involution_check(fam, k, l));
    }
  } else if (suite == "miura") {
    for (int jj = 1; jj <= jmax; ++jj)
      rep.add("j=" + std::to_string(jj), miura_identity_check(jj));
  } else if (suite == "resonance") {
    for (int jj = 1; jj <= (j > 0 ? j : jmax); ++jj) {
      bool ok = true;
      std::string detail;
      try {
        auto sigma = resonance_sigma(jj);
        Rat p = 1;
        for (int i = 0; i < 2 * jj + 1; ++i) p *= 3;
        ok = sigma.symmetric() && sigma.eval(Rat(1), Rat(1), Rat(1)) == (p - 3) / 8;
      } catch (InternalError& e) {
        ok = false;
        detail = e.what();
      }
      rep.add("j=" + std::to_string(jj), ok, detail);
    }
  } else if (suite == "scaling") {
    for (int jj = 1; jj <= jmax; ++jj)
      for (Family fam : {Family::KdV, Family::mKdV})
        rep.add(std::string(family_name(fam)) + " j=" + std::to_string(jj),
                scaling_check(hierarchy_equation(fam, jj)));
  } else if (suite == "coeffs") {
    int jj = j > 0 ? j : 1;
    auto cs = solve_coefficients(jj);
    bool zero = residual_check(jj, cs).is_zero();
    std::ostringstream detail;
    for (const auto& [kl, a] : cs.a)
      detail << "a{" << kl.first << "," << kl.second << "} = " << a.str() << "; ";
    rep.add("j=" + std::to_string(jj) + " residual", zero, detail.str());
  } else {
    throw UsageError("unknown suite '" + suite +
                     "' (shape|involution|miura|resonance|scaling|coeffs)");
  }

  json out;
  out["suite"] = suite;
  out["checks"] = rep.checks;
  out["pass"] = rep.all;
  std::cout << out.dump(2) << "\n";
  return rep.all ? 0 : kExitCheckFailure;
}

// --- solve -------------------------------------------------------------

const json& require(const json& j, const std::string& key, const char* path) {
  if (!j.contains(key))
    throw UsageError(std::string("config missing key: ") + path + "/" + key);
  return j.at(key);
}

SpectralState initial_state(const json& cfg, const Grid& grid, double* speed) {
  const json& init = require(cfg, "initial", "");
  std::string type = require(init, "type", "initial").get<std::string>();
  *speed = 0.0;
  if (type == "soliton") {
    double c = require(init, "c", "initial").get<double>();
    double x0 = init.value("x0", grid.L / 2.0);
    *speed = c;
    return state_from_function(
        grid, [&](double x) { return Cplx(kdv_soliton(c, x - x0, 0.0), 0.0); });
  }
  if (type == "sech_family") {
    int j = require(init, "j", "initial").get<int>();
    double n = require(init, "N", "initial").get<double>();
    double w = require(init, "omega", "initial").get<double>();
    double x0 = init.value("x0", grid.L / 2.0);
    SechFamilyParams p(j, n, w);
    *speed = p.speed;
    return state_from_function(
        grid, [&](double x) { return v_family_eval(p, x - x0, 0.0); });
  }
  if (type == "modes") {
    std::vector<Cplx> modes(grid.M, Cplx(0.0, 0.0));
    for (const json& entry : require(init, "list", "initial")) {
      int f = entry.at(0).get<int>();
      if (f < -grid.M / 2 || f >= grid.M / 2)
        throw UsageError("initial/list frequency out of range");
      modes[(f + grid.M) % grid.M] =
          Cplx(entry.at(1).get<double>(), entry.at(2).get<double>());
    }
    return SpectralState(grid, 0.0, std::move(modes));
  }
  if (type == "file") {
    std::string path = require(init, "path", "initial").get<std::string>();
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read initial/path: " + path);
    std::vector<Cplx> phys;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
      double x, re, im;
      char comma;
      std::istringstream ls(line);
      if (ls >> x >> comma >> re >> comma >> im) phys.push_back(Cplx(re, im));
    }
    if (static_cast<int>(phys.size()) != grid.M)
      throw UsageError("initial/path row count does not match grid/M");
    size_t idx = 0;
    return state_from_function(grid, [&](double) { return phys[idx++]; });
  }
  throw UsageError("initial/type must be soliton|sech_family|modes|file");
}

int cmd_solve(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot read config: " + config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }

  std::string family = require(cfg, "family", "").get<std::string>();
  int j = require(cfg, "j", "").get<int>();
  const json& gc = require(cfg, "grid", "");
  Grid grid(require(gc, "M", "grid").get<int>(), require(gc, "L", "grid").get<double>());
  double dt = require(cfg, "dt", "").get<double>();
  double T = require(cfg, "T", "").get<double>();
  double snap = cfg.value("snapshot_every", T);
  int upto_k = cfg.contains("diagnostics")
                   ? cfg["diagnostics"].value("upto_k", -1)
                   : -1;
  std::string prefix = cfg.value("out_prefix", std::string("run"));

  CompiledRHS rhs = (family == "family21")
                        ? compile_rhs_family(j, solve_coefficients(j), grid)
                        : compile_rhs(hierarchy_equation(parse_family(family), j), grid);

  double speed = 0.0;
  SpectralState init = initial_state(cfg, grid, &speed);
  // traveling data must stay away from the periodic seam over the run
  if (std::abs(speed) * T >= grid.L / 4.0)
    throw UsageError("config violates |c| T < L/4 (periodic wrap-around rule)");

  Trajectory traj = solve(rhs, init, SolveOptions{T, dt, snap, upto_k});

  std::vector<std::string> outputs;
  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    std::ostringstream name;
    name << prefix << "_snap" << i << ".csv";
    auto phys = to_physical(traj.snapshots[i]);
    std::ostringstream csv;
    csv << "x,re,im\n";
    for (int m = 0; m < grid.M; ++m)
      csv << fmt17(grid.x(m)) << ',' << fmt17(phys[m].real()) << ','
          << fmt17(phys[m].imag()) << '\n';
    write_file(name.str(), csv.str());
    outputs.push_back(name.str());
  }
  {
    std::ostringstream csv;
    csv << "t,mean,mass";
    int k0 = (family == "kdv") ? 0 : 1;
    for (size_t c = 2; c + 1 < traj.diagnostics.front().size(); ++c)
      csv << ",H_" << (k0 + static_cast<int>(c) - 2);
    csv << "\n";
    for (const auto& row : traj.diagnostics) {
      for (size_t c = 0; c < row.size(); ++c)
        csv << (c ? "," : "") << fmt17(row[c]);
      csv << "\n";
    }
    write_file(prefix + "_diag.csv", csv.str());
    outputs.push_back(prefix + "_diag.csv");
  }
  write_manifest(prefix + "_manifest.json", "solve", cfg, outputs);
  std::cout << "final t = " << fmt17(traj.snapshots.back().t) << ", snapshots = "
            << traj.snapshots.size() << "\n";
  return 0;
}

// --- demo --------------------------------------------------------------

int cmd_demo(int j, double r, double s, double C, double T, double nmin,
             double nmax, const std::string& prefix) {
  std::vector<double> ns;
  for (double n = nmin; n <= nmax * 1.0000001; n *= 2.0) ns.push_back(n);

  IllposedScenario sc(j, r, s, C, T, ns);  // throws DomainError on a bad range
  DemoReport rep = illposed_demo(sc);

  std::ostringstream csv;
  csv << "N,omega,N2,d0,dT,sep_ratio\n";
  for (const DemoRow& row : rep.rows)
    csv << fmt17(row.n) << ',' << fmt17(row.omega) << ',' << fmt17(row.n2)
        << ',' << fmt17(row.d0) << ',' << fmt17(row.dT) << ','
        << fmt17(row.sep_ratio) << '\n';
  write_file(prefix + ".csv", csv.str());

  json summary;
  summary["slope_fit"] = rep.slope_fit;
  summary["slope_theory"] = rep.slope_theory;
  summary["min_dT"] = rep.min_dT;
  summary["max_dT"] = rep.max_dT;
  write_file(prefix + "_summary.json", summary.dump(2) + "\n");
  write_manifest(prefix + "_manifest.json", "demo",
                 json{{"j", j}, {"r", r}, {"s", s}, {"C", C}, {"T", T},
                      {"Nmin", nmin}, {"Nmax", nmax}},
                 {prefix + ".csv", prefix + "_summary.json"});
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// --- norms -------------------------------------------------------------

int cmd_norms(const std::string& path, double s, double r, double L) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read field file: " + path);
  std::vector<Cplx> phys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    double x, re, im;
    char comma;
    std::istringstream ls(line);
    if (ls >> x >> comma >> re >> comma >> im) phys.push_back(Cplx(re, im));
  }
  int M = static_cast<int>(phys.size());
  Grid grid(M, L);
  size_t idx = 0;
  auto st = state_from_function(grid, [&](double) { return phys[idx++]; });
  double norm = hhat_norm_grid(st, NormSpec(s, r));
  json out;
  out["file"] = path;
  out["s"] = s;
  out["r"] = r;
  out["L"] = L;
  out["norm"] = norm;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for higher order KdV / mKdV hierarchies"};
  app.set_version_flag("--version", std::string("hlab ") + kVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a hierarchy equation");
  std::string gen_family = "kdv", gen_out = "equation";
  int gen_j = 1;
  gen->add_option("--family", gen_family, "kdv | mkdv")->required();
  gen->add_option("--j", gen_j, "hierarchy index")->required()->check(CLI::Range(1, 8));
  gen->add_option("--out", gen_out, "output prefix");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  int ver_j = 0, ver_jmax = 3;
  verify->add_option("suite", suite, "shape|involution|miura|resonance|scaling|coeffs")
      ->required();
  verify->add_option("--j", ver_j, "single index (resonance, coeffs)");
  verify->add_option("--jmax", ver_jmax, "largest index")->check(CLI::Range(1, 8));

  auto* solve_cmd = app.add_subcommand("solve", "integrate an equation on a grid");
  std::string config_path;
  solve_cmd->add_option("--config", config_path, "JSON run config")->required();

  auto* demo = app.add_subcommand("demo", "norm-separation experiment");
  std::string demo_kind = "illposed", demo_out = "demo";
  int demo_j = 1;
  double demo_r = 2.0, demo_s = 0.2, demo_c = 1.0, demo_t = 1.0;
  double demo_nmin = 64.0, demo_nmax = 2048.0;
  demo->add_option("kind", demo_kind, "experiment kind (illposed)");
  demo->add_option("--j", demo_j)->check(CLI::Range(1, 8));
  demo->add_option("--r", demo_r);
  demo->add_option("--s", demo_s);
  demo->add_option("--C", demo_c);
  demo->add_option("--T", demo_t);
  demo->add_option("--Nmin", demo_nmin);
  demo->add_option("--Nmax", demo_nmax);
  demo->add_option("--out", demo_out, "output prefix");

  auto* norms = app.add_subcommand("norms", "weighted transform norm of a field file");
  std::string norm_file;
  double norm_s = 0.0, norm_r = 2.0, norm_l = 0.0;
  norms->add_option("--file", norm_file, "CSV of x,re,im rows")->required();
  norms->add_option("--s", norm_s)->required();
  norms->add_option("--r", norm_r);
  norms->add_option("--L", norm_l, "domain length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_family, gen_j, gen_out);
    if (verify->parsed()) return cmd_verify(suite, ver_j, ver_jmax);
    if (solve_cmd->parsed()) return cmd_solve(config_path);
    if (demo->parsed()) {
      if (demo_kind != "illposed") throw UsageError("unknown demo kind: " + demo_kind);
      return cmd_demo(demo_j, demo_r, demo_s, demo_c, demo_t, demo_nmin,
                      demo_nmax, demo_out);
    }
    if (norms->parsed()) return cmd_norms(norm_file, norm_s, norm_r, norm_l);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what()
              << " (admissible range: -1/r' < s < (2j-1)/(2r'))\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Blowup& e) {
    std::cerr << "blowup: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
