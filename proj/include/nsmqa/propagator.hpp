#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsmqa/hamiltonian.hpp"
#include "nsmqa/nuclei.hpp"
#include "nsmqa/spectra.hpp"

namespace nsmqa {

using ComplexApply = std::function<void(const ComplexVector&, ComplexVector&)>;

struct KrylovOptions {
  int dim = 30;
  double tol = 1e-12;
  int max_halvings = 12;
};

/// exp(-i dt H) v by Lanczos on the Krylov space of v. When m steps do not
/// reach `tol` the step is split in halves.
ComplexVector krylov_expm(const ComplexApply& h, const ComplexVector& v, double dt,
                          const KrylovOptions& opts = {});

/// |<psi|phi>|^2.
double fidelity(const ComplexVector& psi, const ComplexVector& phi);

/// (<psi|H_T|psi> - E_T) / |E_T|.
double relative_energy_error(const ComplexVector& psi, const SparseHamiltonian& target,
                             double E_T);

struct AnnealConfig {
  double tau_omega = 10.0;
  double dt_omega = 0.1;
  int k_track = 10;
  int krylov_dim = 30;
  double krylov_tol = 1e-12;
  bool midpoint = false;  ///< evaluate lambda at step midpoints instead of left endpoints
  int spectrum_stride = 0;  ///< 0 = every step below dim 1e4, every 5th above
  std::uint64_t seed = 20240607;
  int jobs = 0;  ///< 0 = library default
  double norm_tolerance = 1e-10;
};

/// Exact ground state of H_T; a degenerate ground level keeps every member.
struct TargetState {
  double energy = 0.0;
  Eigen::MatrixXd vectors;
  std::string source = "exact-diagonalization";
};

TargetState compute_target(const NuclearSystem& system, const EigenOptions& opts = {});

struct StepRecord {
  int step = 0;
  double t = 0.0;
  double lambda = 0.0;
  double energy = 0.0;  ///< <psi|H(t)|psi>
  double norm = 1.0;
  bool has_spectrum = false;
  RealVector levels;
  RealVector populations;
};

struct EvolutionRecord {
  std::string nucleus;
  AnnealConfig config;
  int n_steps = 0;
  double dt = 0.0;  ///< tau / n_steps
  std::vector<StepRecord> steps;
  double fidelity = 0.0;
  double relative_error = 0.0;
  double final_energy = 0.0;
  double E_T = 0.0;
  double E0 = 0.0;
  std::string target_source;
  double max_norm_drift = 0.0;
  std::optional<GapReport> gap;
};

/// Linear schedule lambda = t / tau from the reference determinant.
EvolutionRecord run_anneal(const NuclearSystem& system, const AnnealConfig& config,
                           const TargetState* target = nullptr);

}  // namespace nsmqa
