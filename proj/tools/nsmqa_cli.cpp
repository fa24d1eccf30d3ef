// nsmqa: basis | anneal | gapscan | taustar | fit | qcost

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nsmqa/error.hpp"
#include "nsmqa/experiments.hpp"
#include "nsmqa/nuclei.hpp"
#include "nsmqa/propagator.hpp"
#include "nsmqa/qresource.hpp"
#include "nsmqa/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace nsmqa;

namespace {

enum Exit : int {
  ok = 0,
  failure = 1,
  bad_argument = 2,
  unknown_nucleus = 3,
  missing_file = 4,
  bad_interaction = 5,
  numerical = 6,
  io = 7,
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return bad_argument;
    case ErrorKind::unknown_nucleus: return unknown_nucleus;
    case ErrorKind::missing_file: return missing_file;
    case ErrorKind::parse: return bad_interaction;
    case ErrorKind::numerical: return numerical;
    case ErrorKind::io: return io;
  }
  return failure;
}

struct Options {
  std::vector<std::string> nuclei;
  std::string interaction;
  std::string shell = "p";
  double tau_omega = 10.0;
  double dt_omega = 0.1;
  int k_track = 10;
  std::string grid = "0.3:40:100";
  double f_target = 0.99;
  std::string mass_scaling = "off";
  int jobs = 0;
  std::string out = "nsmqa-out";
  std::uint64_t seed = 20240607;
  int points = 101;
  std::string sweep;
  bool midpoint = false;
  bool dump_matrix = false;
};

SystemOptions system_options(const Options& o) {
  SystemOptions so;
  if (!o.interaction.empty()) so.interaction = fs::path(o.interaction);
  if (o.mass_scaling != "off") {
    const auto colon = o.mass_scaling.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::invalid_argument, "--mass-scaling must be A0:p or off");
    try {
      so.mass_scaling = std::make_pair(std::stod(o.mass_scaling.substr(0, colon)),
                                       std::stod(o.mass_scaling.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_argument, "--mass-scaling must be A0:p or off");
    }
  }
  return so;
}

std::string interaction_path(const Options& o, Shell shell) {
  return o.interaction.empty() ? default_interaction_path(shell).string() : o.interaction;
}

const Nucleus& single_nucleus(const Options& o) {
  if (o.nuclei.size() != 1) throw Error(ErrorKind::invalid_argument, "exactly one --nucleus required");
  return find_nucleus(o.nuclei.front());
}

AnnealConfig anneal_config(const Options& o) {
  if (!(o.dt_omega > 0.0)) throw Error(ErrorKind::invalid_argument, "--dt-omega must be positive");
  if (o.k_track < 0) throw Error(ErrorKind::invalid_argument, "--k-track must be >= 0");
  AnnealConfig c;
  c.tau_omega = o.tau_omega;
  c.dt_omega = o.dt_omega;
  c.k_track = o.k_track;
  c.seed = o.seed;
  c.jobs = o.jobs;
  c.midpoint = o.midpoint;
  return c;
}

void write_manifest(const std::string& command, const Options& o, const std::string& interaction) {
  ordered_json m;
  m["command"] = command;
  m["nucleus"] = o.nuclei;
  m["interaction"] = interaction;
  m["out"] = o.out;
  m["tau_omega"] = o.tau_omega;
  m["dt_omega"] = o.dt_omega;
  m["schedule"] = "linear";
  m["k_track"] = o.k_track;
  m["krylov_dim"] = AnnealConfig{}.krylov_dim;
  m["krylov_tol"] = AnnealConfig{}.krylov_tol;
  m["midpoint"] = o.midpoint;
  m["grid"] = o.grid;
  m["f_target"] = o.f_target;
  m["mass_scaling"] = o.mass_scaling;
  m["shell"] = o.shell;
  m["points"] = o.points;
  m["sweep"] = o.sweep;
  m["jobs"] = o.jobs;
  m["seed"] = o.seed;
  write_file(fs::path(o.out) / "manifest.json", dump_json(m));
}

int cmd_basis(const Options& o) {
  const Nucleus& nuc = single_nucleus(o);
  const auto sys = load_system(nuc, system_options(o));
  const auto& b = sys->basis();
  std::ostringstream csv;
  b.write_csv(csv);
  write_file(fs::path(o.out) / "basis.csv", csv.str());
  ordered_json j;
  j["nucleus"] = nuc.name;
  j["shell"] = std::string(to_string(nuc.shell));
  j["N_n"] = nuc.neutrons;
  j["Z_p"] = nuc.protons;
  j["D"] = b.modes().D();
  j["dim_F"] = full_space_dimension(b.modes().D(), nuc.neutrons, nuc.protons);
  j["dim_F0"] = b.size();
  j["reference_bits"] = fmt::format("{:#x}", sys->reference().determinant.bits);
  j["E0"] = sys->reference().E0;
  write_file(fs::path(o.out) / "basis.json", dump_json(j));
  if (o.dump_matrix) {
    std::ostringstream m;
    sys->target().write_coordinates(m);
    write_file(fs::path(o.out) / "target.coo", m.str());
  }
  write_manifest("basis", o, interaction_path(o, nuc.shell));
  fmt::print("{} dim_F0={} dim_F={} E0={}\n", nuc.name, b.size(),
             full_space_dimension(b.modes().D(), nuc.neutrons, nuc.protons),
             sys->reference().E0);
  return ok;
}

int cmd_anneal(const Options& o) {
  const Nucleus& nuc = single_nucleus(o);
  const auto sys = load_system(nuc, system_options(o));
  const EvolutionRecord rec = run_anneal(*sys, anneal_config(o));
  std::ostringstream csv;
  write_evolution_csv(rec, csv);
  write_file(fs::path(o.out) / "evolution.csv", csv.str());
  write_file(fs::path(o.out) / "summary.json", dump_json(evolution_summary_json(rec)));
  write_manifest("anneal", o, interaction_path(o, nuc.shell));
  fmt::print("{} tau_omega={} F={} dre={} E_T={} N_t={}\n", nuc.name, o.tau_omega, rec.fidelity,
             rec.relative_error, rec.E_T, rec.n_steps);
  return ok;
}

int cmd_gapscan(const Options& o) {
  const Nucleus& nuc = single_nucleus(o);
  const auto sys = load_system(nuc, system_options(o));
  EigenOptions eig;
  eig.seed = o.seed;
  const int k = std::max(2, o.k_track);
  const auto scan = gap_scan(*sys, o.points, k, eig);
  std::string csv = "lambda";
  for (int i = 0; i < k; ++i) csv += fmt::format(",e{}", i);
  csv += "\n";
  double best = std::numeric_limits<double>::infinity(), at = 0.0;
  for (const auto& p : scan) {
    csv += fmt::format("{}", p.lambda);
    for (int i = 0; i < k; ++i) csv += fmt::format(",{}", i < p.levels.size() ? p.levels[i] : NAN);
    csv += "\n";
    if (p.levels.size() > 1 && p.levels[1] - p.levels[0] < best) {
      best = p.levels[1] - p.levels[0];
      at = p.lambda;
    }
  }
  write_file(fs::path(o.out) / "gapscan.csv", csv);
  ordered_json j;
  j["nucleus"] = nuc.name;
  j["points"] = o.points;
  j["min_gap_e1_e0_MeV"] = best;
  j["lambda_min"] = at;
  j["first_excited_multiplicity_at_0"] = [&] {
    const auto& c = scan.front().cluster;
    return std::count(c.begin(), c.end(), c.size() > 1 ? c[1] : -1);
  }();
  write_file(fs::path(o.out) / "gapscan.json", dump_json(j));
  write_manifest("gapscan", o, interaction_path(o, nuc.shell));
  fmt::print("{} min(e1-e0)={} at lambda={}\n", nuc.name, best, at);
  return ok;
}

int cmd_taustar(const Options& o) {
  if (o.nuclei.empty()) throw Error(ErrorKind::invalid_argument, "at least one --nucleus required");
  std::vector<const Nucleus*> list;
  for (const auto& n : o.nuclei) list.push_back(&find_nucleus(n));
  const auto grid = make_grid(parse_grid(o.grid));
  if (!(o.f_target >= 0.0 && o.f_target < 1.0))
    throw Error(ErrorKind::invalid_argument, "--f-target must lie in [0, 1)");
  const SystemOptions so = system_options(o);
  AnnealConfig base = anneal_config(o);
  base.jobs = 1;

  std::vector<TauStarResult> results(list.size());
  std::vector<std::string> errors(list.size());
  const auto count = static_cast<std::ptrdiff_t>(list.size());
  int threads = 1;
#ifdef _OPENMP
  threads = o.jobs > 0 ? o.jobs : omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const auto sys = load_system(*list[static_cast<std::size_t>(i)], so);
      results[static_cast<std::size_t>(i)] = tau_star_search(*sys, grid, o.f_target, base);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(ErrorKind::numerical, e);

  std::vector<SweepRow> rows;
  ordered_json all = ordered_json::array();
  for (const auto& r : results) {
    ordered_json j;
    j["nucleus"] = r.nucleus;
    j["reached"] = r.reached;
    j["tau_star"] = r.tau_star;
    j["F_star"] = r.fidelity;
    j["max_fidelity"] = r.max_fidelity;
    j["grid_step"] = r.grid_step;
    j["runs"] = r.runs;
    if (r.gap) j["gap"] = gap_json(*r.gap);
    all.push_back(j);
    if (r.reached && r.gap) rows.push_back({r.nucleus, r.gap->delta, r.tau_star, r.fidelity});
    fmt::print("{} tau_star={} F={} Delta={}{}\n", r.nucleus, r.tau_star, r.fidelity,
               r.gap ? r.gap->delta : NAN, r.reached ? "" : " (target not reached)");
  }
  std::ostringstream csv;
  write_sweep_csv(rows, csv);
  write_file(fs::path(o.out) / "sweep.csv", csv.str());
  write_file(fs::path(o.out) / "taustar.json", dump_json(all));
  write_manifest("taustar", o, o.interaction.empty() ? "default" : o.interaction);
  for (const auto& r : results)
    if (!r.reached) return numerical;
  return ok;
}

int cmd_fit(const Options& o) {
  std::ifstream in(o.sweep);
  if (!in) throw Error(ErrorKind::missing_file, "cannot open sweep file " + o.sweep);
  const auto rows = read_sweep_csv(in);
  std::vector<double> delta, tau;
  for (const auto& r : rows) {
    delta.push_back(r.delta);
    tau.push_back(r.tau_star);
  }
  const GapLawFit fit = fit_gap_law(delta, tau);
  write_file(fs::path(o.out) / "fit.json", dump_json(fit_json(fit)));
  write_manifest("fit", o, "");
  fmt::print("c={} r2={} n_points={}\n", fit.c, fit.r2, fit.n_points);
  return ok;
}

int cmd_qcost(const Options& o) {
  const Shell shell = parse_shell(o.shell);
  const std::string path = interaction_path(o, shell);
  const InteractionSet iset = load_interaction(path, shell);
  const PauliHamiltonian ph = jordan_wigner_map(iset, enumerate_modes(iset));
  const CostReport report = cost_report(ph, shell);
  std::ostringstream table;
  ph.write_table(table);
  write_file(fs::path(o.out) / "pauli.txt", table.str());
  write_file(fs::path(o.out) / "cost.json", dump_json(cost_json(report)));
  write_manifest("qcost", o, path);
  fmt::print("shell={} R={} total_cnot={} avg_weight={}\n", report.shell, report.R,
             report.total_cnot, report.avg_weight);
  return ok;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--interaction", o.interaction, "interaction file (default: bundled, $NSM_DATA_DIR)");
  cmd->add_option("--mass-scaling", o.mass_scaling, "two-body mass scaling A0:p, or off")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for randomized starting vectors")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "worker cap (0 = all cores)")->capture_default_str();
}

void add_nucleus(CLI::App* cmd, Options& o, bool many) {
  auto* opt = cmd->add_option("--nucleus", o.nuclei, many ? "nuclei, e.g. Be8,C12" : "nucleus, e.g. Be8")
                  ->required();
  if (many) opt->delimiter(',');
}

void add_anneal(CLI::App* cmd, Options& o) {
  cmd->add_option("--dt-omega", o.dt_omega, "time step in units of 1/omega")->capture_default_str();
  cmd->add_option("--k-track", o.k_track, "instantaneous levels to track")->capture_default_str();
  cmd->add_flag("--midpoint", o.midpoint, "evaluate lambda at step midpoints");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shell-model quantum-annealing simulator and Trotter cost estimator"};
  app.require_subcommand(1);
  Options o;

  auto* basis = app.add_subcommand("basis", "build the M=0 basis");
  add_nucleus(basis, o, false);
  add_common(basis, o);
  basis->add_flag("--dump-matrix", o.dump_matrix, "also write H_T as `i j value` lines");

  auto* anneal = app.add_subcommand("anneal", "run one annealing schedule");
  add_nucleus(anneal, o, false);
  add_common(anneal, o);
  add_anneal(anneal, o);
  anneal->add_option("--tau-omega", o.tau_omega, "total time tau*omega")->required();

  auto* gapscan = app.add_subcommand("gapscan", "instantaneous spectrum along lambda");
  add_nucleus(gapscan, o, false);
  add_common(gapscan, o);
  gapscan->add_option("--k-track", o.k_track, "levels to compute")->capture_default_str();
  gapscan->add_option("--points", o.points, "lambda grid points")->capture_default_str();

  auto* taustar = app.add_subcommand("taustar", "first tau on a grid with F > target");
  add_nucleus(taustar, o, true);
  add_common(taustar, o);
  add_anneal(taustar, o);
  taustar->add_option("--grid", o.grid, "lo:hi:n[:log]")->capture_default_str();
  taustar->add_option("--f-target", o.f_target, "fidelity target")->capture_default_str();

  auto* fit = app.add_subcommand("fit", "fit tau* = c Delta^-2 to a sweep CSV");
  fit->add_option("--sweep", o.sweep, "sweep.csv from taustar")->required();
  fit->add_option("--out", o.out, "output directory")->capture_default_str();

  auto* qcost = app.add_subcommand("qcost", "Jordan-Wigner CNOT count per Trotter step");
  add_common(qcost, o);
  qcost->add_option("--shell", o.shell, "p or sd")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : bad_argument;
  }

  try {
    if (*basis) return cmd_basis(o);
    if (*anneal) return cmd_anneal(o);
    if (*gapscan) return cmd_gapscan(o);
    if (*taustar) return cmd_taustar(o);
    if (*fit) return cmd_fit(o);
    if (*qcost) return cmd_qcost(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
