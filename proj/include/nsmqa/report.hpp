#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsmqa/experiments.hpp"
#include "nsmqa/propagator.hpp"
#include "nsmqa/qresource.hpp"

namespace nsmqa {

/// `step,t,lambda,e_t,e0..e{k-1},p0..p{k-1},norm`; steps without a spectrum
/// carry `nan` in the level and population columns.
void write_evolution_csv(const EvolutionRecord& rec, std::ostream& out);

nlohmann::ordered_json gap_json(const GapReport& gap);
/// nucleus, tau_omega, F, dre, E_T, E0, N_t plus the gap report when present.
nlohmann::ordered_json evolution_summary_json(const EvolutionRecord& rec);

struct SweepRow {
  std::string nucleus;
  double delta = 0.0;
  double tau_star = 0.0;
  double f_star = 0.0;
};

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

nlohmann::ordered_json fit_json(const GapLawFit& fit);
nlohmann::ordered_json cost_json(const CostReport& report);

/// Writes `content` to `path`, creating parent directories; I/O failures carry the path.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace nsmqa
