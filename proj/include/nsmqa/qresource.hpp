#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nsmqa/fockbasis.hpp"
#include "nsmqa/valence.hpp"

namespace nsmqa {

/// Pauli string in symplectic form: qubit q carries X if x_q, Z if z_q, Y if both.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  double coeff = 0.0;

  int weight() const;
  /// Letters for qubits 0..n-1, left to right.
  std::string pattern(int n_qubits) const;
};

/// Complex-coefficient Pauli sum used while mapping; keyed by (x, z).
class PauliSum {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  static PauliSum identity(std::complex<double> c = 1.0);
  static PauliSum creation(int mode);
  static PauliSum annihilation(int mode);

  PauliSum operator*(const PauliSum& other) const;
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(std::complex<double> c);

  const std::map<Key, std::complex<double>>& terms() const { return terms_; }
  void add(Key key, std::complex<double> c);

 private:
  std::map<Key, std::complex<double>> terms_;
};

/// Merged, pruned, Hermitian Pauli representation of H_T.
struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliString> terms;  ///< sorted by (x, z); identity kept as weight 0

  std::size_t R() const { return terms.size(); }
  void write_table(std::ostream& out) const;
};

/// Jordan-Wigner image of sum eps n + sum_{a<b,c<d} vbar a+_a a+_b a_d a_c with
/// qubit q = mode q of `modes`.
PauliHamiltonian jordan_wigner_map(const InteractionSet& iset, const ModeSpace& modes,
                                   double prune = 1e-12);

/// Staircase cost: 2 (w - 1) CNOTs per term of weight w >= 2.
std::uint64_t cnot_count_trotter_step(const PauliHamiltonian& ph);
std::uint64_t staircase_cnots(int weight);

struct CostReport {
  std::string shell;
  int D = 0;
  std::size_t R = 0;
  std::uint64_t total_cnot = 0;
  double avg_weight = 0.0;  ///< over terms of weight >= 1
};

CostReport cost_report(const PauliHamiltonian& ph, Shell shell);

/// Matrix of `ph` on the computational states listed in `basis`.
Eigen::MatrixXd restrict_to_basis(const PauliHamiltonian& ph, const ManyBodyBasis& basis);

}  // namespace nsmqa
