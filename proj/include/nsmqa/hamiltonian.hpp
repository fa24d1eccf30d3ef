#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "nsmqa/fockbasis.hpp"
#include "nsmqa/valence.hpp"

namespace nsmqa {

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Real symmetric operator in compressed sparse row form.
class SparseHamiltonian {
 public:
  struct Entry {
    std::uint32_t col;
    double value;
  };

  SparseHamiltonian() = default;
  /// Rows must be sorted by column with no duplicates.
  explicit SparseHamiltonian(const std::vector<std::vector<Entry>>& rows);
  static SparseHamiltonian diagonal_matrix(const RealVector& diag);

  std::size_t dim() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const { return cols_.size(); }

  void apply(const RealVector& x, RealVector& y) const;
  void apply(const ComplexVector& x, ComplexVector& y) const;
  RealVector operator*(const RealVector& x) const;
  ComplexVector operator*(const ComplexVector& x) const;

  RealVector diagonal() const;
  double element(std::size_t i, std::size_t j) const;
  /// Largest |H_ij - H_ji| over stored entries.
  double max_asymmetry() const;
  /// Gershgorin bound on the spectral radius.
  double norm_bound() const;
  Eigen::MatrixXd to_dense() const;

  /// Coordinate text dump, one `i j value` line per stored entry.
  void write_coordinates(std::ostream& out) const;

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const { return cols_; }
  const std::vector<double>& values() const { return vals_; }

 private:
  template <class Vec>
  void apply_impl(const Vec& x, Vec& y) const;

  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

/// H_T on `basis`: one-body SPE term plus the antisymmetrized two-body term.
/// Works for any basis (fixed M or not).
SparseHamiltonian assemble_target(const ManyBodyBasis& basis, const InteractionSet& iset,
                                  const TwoBodyTable& table);
SparseHamiltonian assemble_target(const ManyBodyBasis& basis, const InteractionSet& iset);

/// <s|H_T|s> evaluated directly from occupations.
double diagonal_energy(std::uint64_t bits, const ModeSpace& modes, const InteractionSet& iset,
                       const TwoBodyTable& table);

struct ReferenceState {
  SlaterDeterminant determinant;
  std::size_t index = 0;  ///< position in the basis
  double E0 = 0.0;
};

/// Lowest modes of each species in filling order; E0 = <s~|H_T|s~>.
ReferenceState reference_state(const ManyBodyBasis& basis, const InteractionSet& iset,
                               const TwoBodyTable& table, const SparseHamiltonian& target);

/// Diagonal H_D = E0/(N+Z) * sum_a s~[a] n_a. Throws when E0 >= 0.
SparseHamiltonian build_driver(const ReferenceState& ref, const ManyBodyBasis& basis);

/// (1 - lambda) H_D + lambda H_T, applied lazily.
class InterpolatedOperator {
 public:
  InterpolatedOperator(const SparseHamiltonian& driver, const SparseHamiltonian& target,
                       double lambda = 0.0);

  std::size_t dim() const { return target_->dim(); }
  double lambda() const { return lambda_; }
  void set_lambda(double lambda);

  void apply(const RealVector& x, RealVector& y) const;
  void apply(const ComplexVector& x, ComplexVector& y) const;
  double norm_bound() const;

  const SparseHamiltonian& driver() const { return *driver_; }
  const SparseHamiltonian& target() const { return *target_; }

 private:
  const SparseHamiltonian* driver_;
  const SparseHamiltonian* target_;
  RealVector driver_diag_;
  double lambda_;
};

}  // namespace nsmqa
