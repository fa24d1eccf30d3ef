#include "nsmqa/report.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "nsmqa/error.hpp"

namespace nsmqa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void write_evolution_csv(const EvolutionRecord& rec, std::ostream& out) {
  const int k = rec.config.k_track;
  std::string header = "step,t,lambda,e_t";
  for (int i = 0; i < k; ++i) header += fmt::format(",e{}", i);
  for (int i = 0; i < k; ++i) header += fmt::format(",p{}", i);
  header += ",norm\n";
  out << header;

  for (const auto& s : rec.steps) {
    std::string line = fmt::format("{},{},{},{}", s.step, s.t, s.lambda, s.energy);
    for (int i = 0; i < k; ++i)
      line += fmt::format(",{}", s.has_spectrum && i < s.levels.size() ? s.levels[i] : kNaN);
    for (int i = 0; i < k; ++i)
      line += fmt::format(",{}",
                          s.has_spectrum && i < s.populations.size() ? s.populations[i] : kNaN);
    line += fmt::format(",{}\n", s.norm);
    out << line;
  }
}

nlohmann::ordered_json gap_json(const GapReport& gap) {
  nlohmann::ordered_json j;
  j["Delta_MeV"] = gap.delta;
  j["t_min"] = gap.t_min;
  j["lambda_min"] = gap.lambda_min;
  j["r"] = gap.r ? nlohmann::ordered_json(*gap.r) : nlohmann::ordered_json(nullptr);
  std::vector<double> pops(gap.max_populations.data(),
                           gap.max_populations.data() + gap.max_populations.size());
  j["max_populations"] = pops;
  return j;
}

nlohmann::ordered_json evolution_summary_json(const EvolutionRecord& rec) {
  nlohmann::ordered_json j;
  j["nucleus"] = rec.nucleus;
  j["tau_omega"] = rec.config.tau_omega;
  j["F"] = rec.fidelity;
  j["dre"] = rec.relative_error;
  j["E_T"] = rec.E_T;
  j["E0"] = rec.E0;
  j["N_t"] = rec.n_steps;
  j["dt_omega"] = rec.dt;
  j["final_energy"] = rec.final_energy;
  j["target_source"] = rec.target_source;
  j["max_norm_drift"] = rec.max_norm_drift;
  if (rec.gap) j["gap"] = gap_json(*rec.gap);
  return j;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "nucleus,Delta_MeV,tau_star,F_star\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{}\n", r.nucleus, r.delta, r.tau_star, r.f_star);
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("nucleus", 0) == 0) continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 4)
      throw Error(ErrorKind::parse, fmt::format("sweep line {}: expected 4 columns", line_no));
    try {
      rows.push_back({f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3])});
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, fmt::format("sweep line {}: bad number", line_no));
    }
  }
  return rows;
}

nlohmann::ordered_json fit_json(const GapLawFit& fit) {
  nlohmann::ordered_json j;
  j["c"] = fit.c;
  j["r2"] = fit.r2;
  j["n_points"] = fit.n_points;
  return j;
}

nlohmann::ordered_json cost_json(const CostReport& report) {
  nlohmann::ordered_json j;
  j["shell"] = report.shell;
  j["D"] = report.D;
  j["R"] = report.R;
  j["total_cnot"] = report.total_cnot;
  j["avg_weight"] = report.avg_weight;
  return j;
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::io, "cannot create directory " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace nsmqa
