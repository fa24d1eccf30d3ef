#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nsmqa/valence.hpp"

namespace nsmqa {

/// Occupation bitstring over the 2D modes (bit a set <=> mode a occupied).
struct SlaterDeterminant {
  std::uint64_t bits = 0;
  int two_M = 0;
  int n_count = 0;
  int z_count = 0;

  friend bool operator==(const SlaterDeterminant&, const SlaterDeterminant&) = default;
};

SlaterDeterminant make_determinant(const ModeSpace& modes, std::uint64_t bits);

/// Doubled total angular-momentum projection of an occupation word.
int total_m(const ModeSpace& modes, std::uint64_t bits);

/// Slater determinants with fixed neutron/proton numbers, optionally restricted
/// to one total projection, sorted by bits-as-integer.
class ManyBodyBasis {
 public:
  ManyBodyBasis(ModeSpace modes, int n_neutrons, int n_protons, std::optional<int> two_M);

  const ModeSpace& modes() const { return modes_; }
  Shell shell() const { return modes_.shell(); }
  int neutrons() const { return n_; }
  int protons() const { return z_; }
  /// nullopt for a basis spanning every projection.
  std::optional<int> two_M() const { return two_M_; }

  std::size_t size() const { return states_.size(); }
  const std::vector<SlaterDeterminant>& states() const { return states_; }
  const SlaterDeterminant& operator[](std::size_t i) const { return states_[i]; }
  std::uint64_t bits(std::size_t i) const { return states_[i].bits; }

  /// Position of `bits` in the basis, if present.
  std::optional<std::size_t> index_of(std::uint64_t bits) const;

  /// Diagnostic dump: `index,bits_hex,two_M` per line with a header row.
  void write_csv(std::ostream& out) const;

 private:
  ModeSpace modes_;
  int n_;
  int z_;
  std::optional<int> two_M_;
  std::vector<SlaterDeterminant> states_;
  std::vector<std::uint64_t> sorted_bits_;
};

ManyBodyBasis build_m0_basis(const ModeSpace& modes, int n_neutrons, int n_protons);
ManyBodyBasis build_m0_basis(Shell shell, int n_neutrons, int n_protons);

/// C(D, N) * C(D, Z): size of the unrestricted space.
std::uint64_t full_space_dimension(int D, int n_neutrons, int n_protons);

/// Word with modes m -> -m exchanged (same orbital and species).
std::uint64_t reflect_m(const ModeSpace& modes, std::uint64_t bits);

}  // namespace nsmqa
