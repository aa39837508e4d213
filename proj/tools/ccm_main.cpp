//==============================================================================
// ccm_main.cpp
// Command-line laboratory:
//   ccm simulate --config cfg [--set sec.key=val]...
//   ccm compare  --config cfg [--set ...]
//   ccm spectral --config cfg [--set ...]
// Exit codes: 0 ok, 1 config error, 2 flagged drift / bound exceeded,
// 3 blowup truncation, 4 solver failure, 5 eigensolver failure.
//==============================================================================
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ccm/config.hpp"
#include "ccm/evolve.hpp"
#include "ccm/io.hpp"
#include "ccm/lax.hpp"
#include "ccm/resolvent.hpp"

namespace fs = std::filesystem;
using namespace ccm;

namespace {

constexpr const char* kVersion = "ccm-lab 1.0.0";

json config_echo(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [sec, kv] : cfg.sections()) {
    json s = json::object();
    for (const auto& [k, v] : kv) s[k] = v;
    j[sec] = s;
  }
  return j;
}

Sign parse_sign(const std::string& s) {
  if (s == "focusing") return Sign::focusing;
  if (s == "defocusing") return Sign::defocusing;
  throw std::runtime_error("config: sign must be focusing|defocusing, got '" +
                           s + "'");
}

HardyField load_field_csv(const GridPtr& grid, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open field file '" + path + "'");
  std::string line;
  std::vector<cplx> spec(grid->hardy_modes(), cplx{0.0, 0.0});
  int seen = 0;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    // columns: x,re_q,im_q,k,xi,re_qhat,im_qhat
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (cols.size() < 7 || cols[3].empty()) continue;
    int k = std::stoi(cols[3]);
    if (k < 0 || k >= grid->hardy_modes())
      throw std::runtime_error("field file: mode index " + std::to_string(k) +
                               " outside the grid ladder");
    spec[k] = cplx{std::stod(cols[5]), std::stod(cols[6])};
    ++seen;
  }
  if (seen != grid->hardy_modes())
    throw std::runtime_error("field file: expected " +
                             std::to_string(grid->hardy_modes()) +
                             " spectral rows, found " + std::to_string(seen));
  return HardyField(grid, std::move(spec));
}

HardyField initial_data(const RunConfig& cfg, const GridPtr& grid) {
  const std::string kind = cfg.get("initial", "kind");
  if (kind == "soliton")
    return soliton(cfg.get_double_or("initial", "lambda", 1.0),
                   cfg.get_double_or("initial", "x0", 0.0), grid);
  if (kind == "random")
    return random_field(grid,
                        static_cast<std::uint64_t>(cfg.get_int("initial", "seed")),
                        cfg.get_double_or("initial", "mass", 1.0),
                        cfg.get_double_or("initial", "decay", 4.0),
                        cfg.get_double_or("initial", "amplitude", 1.0));
  if (kind == "file") return load_field_csv(grid, cfg.get("initial", "path"));
  throw std::runtime_error("config: initial.kind must be soliton|random|file");
}

EvolutionConfig evolution_config(const RunConfig& cfg, Sign sign) {
  EvolutionConfig e;
  e.sign = sign;
  e.dt = cfg.get_double_or("run", "dt", 1e-3);
  e.t_final = cfg.get_double_or("run", "t_final", 1.0);
  e.record_stride = static_cast<int>(cfg.get_int_or("run", "record_stride", 100));
  e.beta_kappas = cfg.get_list_or("monitor", "beta_kappas", {});
  e.tail_kappas = cfg.get_list_or("monitor", "tail_kappas", {});
  e.mass_drift_tol = cfg.get_double_or("monitor", "mass_tol", 1e-10);
  e.momentum_drift_tol = cfg.get_double_or("monitor", "momentum_tol", 1e-8);
  e.hamiltonian_drift_tol = cfg.get_double_or("monitor", "hamiltonian_tol", 1e-8);
  e.beta_drift_tol = cfg.get_double_or("monitor", "beta_tol", 1e-6);
  e.blowup_mass_drift = cfg.get_double_or("monitor", "blowup_mass_drift", 1e-3);
  return e;
}

void write_manifest(const fs::path& dir, const RunConfig& cfg,
                    const std::string& command) {
  json m;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = config_echo(cfg);
  atomic_write((dir / "run_manifest.json").string(), m.dump(2) + "\n");
  // wall-clock only in the sidecar, keeping reports byte-stable
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  atomic_write((dir / "run_manifest.time.txt").string(),
               std::string(buf) + "\n");
}

const std::map<std::string, std::vector<std::string>> kSimulateKeys = {
    {"grid", {"n", "length"}},
    {"run", {"sign", "dt", "t_final", "record_stride"}},
    {"initial", {"kind", "lambda", "x0", "seed", "mass", "decay", "amplitude",
                 "path"}},
    {"monitor", {"beta_kappas", "tail_kappas", "mass_tol", "momentum_tol",
                 "hamiltonian_tol", "beta_tol", "blowup_mass_drift"}},
    {"output", {"dir", "dump_fields"}}};

int run_simulate(const RunConfig& cfg) {
  cfg.require_known(kSimulateKeys);
  auto grid = make_grid(static_cast<int>(cfg.get_int("grid", "n")),
                        cfg.get_double("grid", "length"));
  ProductEngine pe(grid);
  Sign sign = parse_sign(cfg.get("run", "sign"));
  HardyField q0 = initial_data(cfg, grid);
  EvolutionConfig ec = evolution_config(cfg, sign);

  fs::path dir = cfg.get_or("output", "dir", "out");
  fs::create_directories(dir);
  write_manifest(dir, cfg, "simulate");

  EvolutionResult res = evolve(q0, ec, pe);
  const bool dump_fields = cfg.get_or("output", "dump_fields", "true") == "true";

  std::string traj;
  {
    json header;
    header["version"] = kVersion;
    header["config"] = config_echo(cfg);
    if (!res.diagnostic.empty()) header["diagnostic"] = res.diagnostic;
    traj += header.dump() + "\n";
  }
  int idx = 0;
  for (const auto& r : res.records) {
    std::string ref;
    if (dump_fields) {
      char name[64];
      std::snprintf(name, sizeof(name), "field_%04d.csv", idx);
      atomic_write((dir / name).string(), field_csv(r.field));
      ref = name;
    }
    traj += record_json(r, ref).dump() + "\n";
    ++idx;
  }
  atomic_write((dir / "trajectory.jsonl").string(), traj);

  json summary;
  summary["version"] = kVersion;
  summary["config"] = config_echo(cfg);
  summary["max_mass_drift"] = res.max_mass_drift;
  summary["max_momentum_drift"] = res.max_momentum_drift;
  summary["max_hamiltonian_drift"] = res.max_hamiltonian_drift;
  summary["max_beta_drift"] = res.max_beta_drift;
  summary["blowup"] = res.blowup;
  summary["drift_flagged"] = res.drift_flagged;
  if (!res.diagnostic.empty()) summary["diagnostic"] = res.diagnostic;
  // final-vs-initial distance (the stationarity figure for soliton runs)
  {
    const auto& a = res.records.front().field.spectrum();
    const auto& b = res.records.back().field.spectrum();
    double e = 0, n = 0;
    for (size_t k = 0; k < a.size(); ++k) {
      e += std::norm(a[k] - b[k]);
      n += std::norm(a[k]);
    }
    summary["final_vs_initial_rel_l2"] = n > 0 ? std::sqrt(e / n) : 0.0;
  }
  atomic_write((dir / "summary.json").string(), summary.dump(2) + "\n");

  if (res.blowup) return 3;
  if (res.drift_flagged) return 2;
  return 0;
}

const std::map<std::string, std::vector<std::string>> kCompareKeys = {
    {"grid", {"n", "length"}},
    {"run", {"sign", "dt", "record_stride"}},
    {"initial", {"kind", "lambda", "x0", "seed", "mass", "decay", "amplitude",
                 "path"}},
    {"compare", {"t_list", "b_list", "bound", "stride", "solver_tol",
                 "solver_max_iterations"}},
    {"output", {"dir"}}};

int run_compare(const RunConfig& cfg) {
  cfg.require_known(kCompareKeys);
  auto grid = make_grid(static_cast<int>(cfg.get_int("grid", "n")),
                        cfg.get_double("grid", "length"));
  ProductEngine pe(grid);
  Sign sign = parse_sign(cfg.get("run", "sign"));
  HardyField q0 = initial_data(cfg, grid);

  std::vector<double> ts = cfg.get_list_or("compare", "t_list", {0.25, 1.0});
  std::vector<double> bs = cfg.get_list_or("compare", "b_list", {1.0});
  double bound = cfg.get_double_or("compare", "bound", 1e-4);
  int stride = static_cast<int>(cfg.get_int_or("compare", "stride", 64));
  SolverSettings st;
  st.tol = cfg.get_double_or("compare", "solver_tol", 1e-11);
  st.max_iterations =
      static_cast<int>(cfg.get_int_or("compare", "solver_max_iterations", 400));
  double dt = cfg.get_double_or("run", "dt", 1e-3);

  fs::path dir = cfg.get_or("output", "dir", "out");
  fs::create_directories(dir);
  write_manifest(dir, cfg, "compare");

  std::sort(ts.begin(), ts.end());
  json report;
  report["version"] = kVersion;
  report["config"] = config_echo(cfg);
  report["cases"] = json::array();

  bool all_ok = true;
  HardyField q = q0;
  double t_now = 0.0;
  EvolutionConfig ec;
  ec.sign = sign;
  ec.dt = dt;
  for (double t : ts) {
    // advance the stepper to t
    double span = t - t_now;
    if (span > 0) {
      ec.t_final = span;
      ec.record_stride = 1 << 30;
      EvolutionResult r = evolve(q, ec, pe);
      if (r.blowup) return 3;
      q = r.records.back().field;
      t_now = t;
    }
    for (double b : bs) {
      HardyField smoothed = poisson_semigroup(q, b);
      const auto& sm = smoothed.samples();
      double sup = 0, l2 = 0;
      int count = 0;
      std::map<int, int> iter_hist;
      int ladder_depth = 0;
      try {
        auto line = explicit_line(q0, t, b, sign, pe, st, stride);
        for (const auto& p : line) {
          int j = static_cast<int>(
              std::lround((p.x + grid->length() / 2) / grid->dx()));
          double e = std::abs(p.value - sm[j]);
          sup = std::max(sup, e);
          l2 += e * e;
          ++count;
          ++iter_hist[p.report.iterations];
          ladder_depth = std::max(ladder_depth, p.report.ladder_depth);
        }
      } catch (const std::exception& ex) {
        std::cerr << "solver failure at t=" << t << " b=" << b << ": "
                  << ex.what() << "\n";
        return 4;
      }
      l2 = std::sqrt(l2 * grid->dx() * stride);
      json c;
      c["t"] = t;
      c["b"] = b;
      c["sup_error"] = sup;
      c["l2_error"] = l2;
      json hist = json::object();
      for (auto& [it, n] : iter_hist) hist[std::to_string(it)] = n;
      c["solver_iterations_histogram"] = hist;
      c["ladder_depth"] = ladder_depth;
      c["pass"] = sup < bound;
      all_ok = all_ok && (sup < bound);
      report["cases"].push_back(c);
    }
  }
  report["bound"] = bound;
  report["all_pass"] = all_ok;
  atomic_write((dir / "compare_report.json").string(), report.dump(2) + "\n");
  return all_ok ? 0 : 2;
}

const std::map<std::string, std::vector<std::string>> kSpectralKeys = {
    {"grid", {"n", "length"}},
    {"run", {"sign", "dt", "t_final", "record_stride"}},
    {"initial", {"kind", "lambda", "x0", "seed", "mass", "decay", "amplitude",
                 "path"}},
    {"spectral", {"kappas", "margin", "trajectory", "edge_guard"}},
    {"output", {"dir"}}};

int run_spectral(const RunConfig& cfg) {
  cfg.require_known(kSpectralKeys);
  auto grid = make_grid(static_cast<int>(cfg.get_int("grid", "n")),
                        cfg.get_double("grid", "length"));
  ProductEngine pe(grid);
  Sign sign = parse_sign(cfg.get("run", "sign"));
  HardyField q0 = initial_data(cfg, grid);
  std::vector<double> kappas =
      cfg.get_list_or("spectral", "kappas", {1, 2, 4, 8, 16});
  double margin = cfg.get_double_or("spectral", "margin", 1.0);
  double guard = cfg.get_double_or("spectral", "edge_guard", -1.0);

  fs::path dir = cfg.get_or("output", "dir", "out");
  fs::create_directories(dir);
  write_manifest(dir, cfg, "spectral");

  auto report_for = [&](const HardyField& q) {
    LaxOperatorMatrix L(q, sign);
    json j;
    j["kappa0"] = L.kappa0(margin);
    json bsj = json::array();
    for (double v : L.bound_states(guard)) bsj.push_back(v);
    j["bound_states"] = bsj;
    json ecj = json::array();
    for (double v : L.edge_candidates(guard)) ecj.push_back(v);
    j["edge_candidates"] = ecj;
    json bj = json::object(), b2j = json::object();
    for (double kap : kappas) {
      try {
        bj[format_double(kap)] = L.beta(kap);
      } catch (const std::exception&) {
        bj[format_double(kap)] = nullptr;  // below kappa0
      }
      b2j[format_double(kap)] = beta_quadratic(q, kap);
    }
    j["beta"] = bj;
    j["beta2"] = b2j;
    return j;
  };

  json report;
  report["version"] = kVersion;
  report["config"] = config_echo(cfg);
  try {
    report["initial"] = report_for(q0);
    if (cfg.get_or("spectral", "trajectory", "false") == "true") {
      EvolutionConfig ec = evolution_config(cfg, sign);
      ec.beta_kappas.clear();  // beta evaluated here, not inside evolve
      EvolutionResult res = evolve(q0, ec, pe);
      if (res.blowup) return 3;
      json drift = json::array();
      json base = report["initial"]["beta"];
      double max_drift = 0;
      for (const auto& r : res.records) {
        json jr = report_for(r.field);
        jr["t"] = r.t;
        for (double kap : kappas) {
          const auto key = format_double(kap);
          if (!base[key].is_null() && !jr["beta"][key].is_null()) {
            double d = std::abs(jr["beta"][key].get<double>() -
                                base[key].get<double>()) /
                       std::max(std::abs(base[key].get<double>()), 1e-14);
            max_drift = std::max(max_drift, d);
          }
        }
        drift.push_back(jr);
      }
      report["trajectory"] = drift;
      report["max_beta_drift"] = max_drift;
    }
  } catch (const std::exception& ex) {
    std::cerr << "spectral failure: " << ex.what() << "\n";
    return 5;
  }
  atomic_write((dir / "spectral_report.json").string(), report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for the continuum Calogero-Moser equation"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")
        ->required();
    sub->add_option("--set", overrides,
                    "override config entries, section.key=value");
  };
  CLI::App* sim = app.add_subcommand("simulate", "time-step the equation");
  CLI::App* cmp = app.add_subcommand(
      "compare", "cross-validate the explicit formula against the stepper");
  CLI::App* spc = app.add_subcommand("spectral", "Lax-spectral diagnostics");
  add_common(sim);
  add_common(cmp);
  add_common(spc);

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    cfg = RunConfig::parse_file(config_path);
    for (const auto& o : overrides) {
      size_t eq = o.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("--set expects section.key=value, got '" + o +
                                 "'");
      cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 1;
  }

  try {
    if (sim->parsed()) return run_simulate(cfg);
    if (cmp->parsed()) return run_compare(cfg);
    if (spc->parsed()) return run_spectral(cfg);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    // configuration-shaped problems (bad keys, bad values, missing files)
    std::string msg = ex.what();
    if (msg.rfind("config", 0) == 0 || msg.find("field file") != std::string::npos)
      return 1;
    return 4;
  }
  return 0;
}
