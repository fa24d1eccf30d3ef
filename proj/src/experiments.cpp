#include "nsmqa/experiments.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "nsmqa/error.hpp"

namespace nsmqa {

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3 && parts.size() != 4)
    throw Error(ErrorKind::invalid_argument, "grid must be lo:hi:n[:log]");
  GridSpec g;
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    g.points = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_argument, "grid '" + text + "' is not lo:hi:n");
  }
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "lin")
      throw Error(ErrorKind::invalid_argument, "grid spacing must be lin or log");
    g.logarithmic = parts[3] == "log";
  }
  if (!(g.lo > 0.0) || !(g.hi >= g.lo) || g.points < 1 || (g.points == 1 && g.hi != g.lo))
    throw Error(ErrorKind::invalid_argument, "grid needs 0 < lo <= hi and n >= 1");
  return g;
}

std::vector<double> make_grid(const GridSpec& spec) {
  std::vector<double> grid(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    const double f = spec.points == 1 ? 0.0 : static_cast<double>(i) / (spec.points - 1);
    grid[static_cast<std::size_t>(i)] =
        spec.logarithmic ? spec.lo * std::pow(spec.hi / spec.lo, f) : spec.lo + f * (spec.hi - spec.lo);
  }
  return grid;
}

TauStarResult tau_star_search(const NuclearSystem& system, const std::vector<double>& grid,
                              double f_target, const AnnealConfig& base) {
  if (grid.empty()) throw Error(ErrorKind::invalid_argument, "empty tau grid");
  EigenOptions eig;
  eig.seed = base.seed;
  const TargetState target = compute_target(system, eig);

  TauStarResult res;
  res.nucleus = system.nucleus().name;
  res.grid_step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;

  AnnealConfig quick = base;
  quick.k_track = 0;
  double previous = 0.0;
  for (double tau : grid) {
    quick.tau_omega = tau;
    const EvolutionRecord rec = run_anneal(system, quick, &target);
    ++res.runs;
    if (rec.fidelity > res.max_fidelity) {
      res.max_fidelity = rec.fidelity;
      if (!res.reached) {
        res.tau_star = tau;
        res.fidelity = rec.fidelity;
      }
    }
    if (rec.fidelity > f_target) {
      res.reached = true;
      res.tau_star = tau;
      res.fidelity = rec.fidelity;
      res.previous_fidelity = previous;
      break;
    }
    previous = rec.fidelity;
  }

  AnnealConfig tracked = base;
  tracked.tau_omega = res.tau_star;
  if (tracked.k_track < 2) tracked.k_track = 10;
  res.gap = run_anneal(system, tracked, &target).gap;
  return res;
}

GapLawFit fit_gap_law(const std::vector<double>& delta, const std::vector<double>& tau) {
  if (delta.size() != tau.size()) throw Error(ErrorKind::invalid_argument, "length mismatch");
  if (delta.size() < 3) throw Error(ErrorKind::invalid_argument, "gap-law fit needs 3 points");
  bool distinct = false;
  for (double d : delta) {
    if (!(d > 0.0)) throw Error(ErrorKind::invalid_argument, "gaps must be positive");
    if (d != delta.front()) distinct = true;
  }
  if (!distinct) throw Error(ErrorKind::invalid_argument, "all gaps are equal");

  double sxy = 0.0, sxx = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const double x = 1.0 / (delta[i] * delta[i]);
    sxy += x * tau[i];
    sxx += x * x;
    mean += tau[i];
  }
  mean /= static_cast<double>(tau.size());
  GapLawFit fit;
  fit.c = sxy / sxx;
  fit.n_points = static_cast<int>(delta.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const double model = fit.c / (delta[i] * delta[i]);
    ss_res += (tau[i] - model) * (tau[i] - model);
    ss_tot += (tau[i] - mean) * (tau[i] - mean);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : -INFINITY);
  return fit;
}

std::vector<GapScanPoint> gap_scan(const NuclearSystem& system, int points, int k,
                                   const EigenOptions& opts) {
  if (points < 2) throw Error(ErrorKind::invalid_argument, "gap scan needs at least two points");
  std::vector<GapScanPoint> out(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < points; ++i) {
    const double lambda = static_cast<double>(i) / (points - 1);
    InterpolatedOperator op(system.driver(), system.target(), lambda);
    EigenOptions o = opts;
    o.seed = opts.seed + static_cast<std::uint64_t>(i);
    const InstantSpectrum s = lowest_eigenpairs(as_operator(op), k, o);
    out[static_cast<std::size_t>(i)] = {lambda, s.values, s.cluster};
  }
  return out;
}

}  // namespace nsmqa
