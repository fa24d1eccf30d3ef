#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "nsmqa/fockbasis.hpp"
#include "nsmqa/hamiltonian.hpp"

namespace nsmqa {

/// Real symmetric matrix-free operator.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(const RealVector&, RealVector&)> apply;
};

LinearOperator as_operator(const SparseHamiltonian& h);
LinearOperator as_operator(const InterpolatedOperator& h);

struct EigenOptions {
  std::size_t dense_threshold = 500;  ///< dense diagonalization below this dimension
  std::uint64_t seed = 20240607;
  double tolerance = 1e-10;  ///< residual relative to the operator scale
  int max_restarts = 200;
  double cluster_tolerance = 1e-8;
};

struct InstantSpectrum {
  double lambda = 0.0;
  RealVector values;          ///< ascending
  Eigen::MatrixXd vectors;    ///< orthonormal columns
  std::vector<int> cluster;   ///< cluster[i] = index of the lowest member of i's cluster

  int size() const { return static_cast<int>(values.size()); }
};

/// Lowest k eigenpairs: dense below the threshold, thick-restart block Lanczos
/// with full reorthogonalization otherwise (block size k resolves
/// multiplicities up to k).
InstantSpectrum lowest_eigenpairs(const LinearOperator& op, int k, const EigenOptions& opts = {});

/// Groups adjacent eigenvalues whose gap is below tol * max(1, |e|).
std::vector<int> degeneracy_clusters(const RealVector& values, double tol);

/// p_i = |<psi|e_i>|^2, summed over each cluster and attributed to its lowest
/// member (other members report 0).
RealVector instantaneous_populations(const ComplexVector& psi, const InstantSpectrum& spectrum);

struct GapReport {
  std::optional<int> r;  ///< resonant cluster index; empty when nothing exceeds the threshold
  double delta = 0.0;    ///< min_t (e_r - e_0), MeV
  double t_min = 0.0;
  double lambda_min = 0.0;
  RealVector max_populations;
};

/// Resonant level = lowest excited cluster whose max population exceeds
/// `threshold`; without one, the gap is measured to level 1.
GapReport min_gap_and_resonance(const std::vector<double>& times,
                                const std::vector<double>& lambdas,
                                const std::vector<RealVector>& energies,
                                const std::vector<RealVector>& populations,
                                double threshold = 1e-6);

/// J+ mapping a fixed-M basis into the M+1 basis.
class RaisingOperator {
 public:
  explicit RaisingOperator(const ManyBodyBasis& basis);

  const ManyBodyBasis& target_basis() const { return *target_; }
  const Eigen::SparseMatrix<double>& matrix() const { return jplus_; }
  int two_M() const { return two_M_; }

  /// <psi|J^2|psi> = |J+ psi|^2 + M(M+1) for normalized psi.
  double j_squared(const RealVector& psi) const;
  double j_squared(const ComplexVector& psi) const;
  /// J^2 psi = J- J+ psi + M(M+1) psi.
  RealVector apply_j_squared(const RealVector& psi) const;

 private:
  std::shared_ptr<ManyBodyBasis> target_;
  Eigen::SparseMatrix<double> jplus_;
  int two_M_;
};

double j_squared_expectation(const ComplexVector& psi, const ManyBodyBasis& basis);

}  // namespace nsmqa
