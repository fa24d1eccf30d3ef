#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsmqa/nuclei.hpp"
#include "nsmqa/propagator.hpp"

namespace nsmqa {

struct GridSpec {
  double lo = 0.3;
  double hi = 40.0;
  int points = 100;
  bool logarithmic = false;
};

/// Parses "lo:hi:n" (optionally suffixed ":log").
GridSpec parse_grid(const std::string& text);
std::vector<double> make_grid(const GridSpec& spec);

struct TauStarResult {
  std::string nucleus;
  bool reached = false;
  double tau_star = 0.0;  ///< first grid point with F > target (or the best point when not reached)
  double fidelity = 0.0;
  double max_fidelity = 0.0;
  double grid_step = 0.0;
  double previous_fidelity = 0.0;  ///< F at the preceding grid point (0 when tau* is the first)
  std::optional<GapReport> gap;
  int runs = 0;
};

/// Anneals along the ascending grid until the final fidelity exceeds
/// `f_target`; the gap comes from a spectrum-tracking rerun at tau*.
TauStarResult tau_star_search(const NuclearSystem& system, const std::vector<double>& grid,
                              double f_target, const AnnealConfig& base);

struct GapLawFit {
  double c = 0.0;   ///< tau = c * Delta^-2
  double r2 = 0.0;
  int n_points = 0;
};

/// Least squares through the origin of tau against Delta^-2.
GapLawFit fit_gap_law(const std::vector<double>& delta, const std::vector<double>& tau);

struct GapScanPoint {
  double lambda = 0.0;
  RealVector levels;
  std::vector<int> cluster;
};

/// Instantaneous spectrum of H(lambda) on a uniform lambda grid (no dynamics).
std::vector<GapScanPoint> gap_scan(const NuclearSystem& system, int points, int k,
                                   const EigenOptions& opts = {});

}  // namespace nsmqa
