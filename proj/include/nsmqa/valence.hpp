#pragma once

// Valence-shell orbitals, interaction files and the coupled -> m-scheme
// (uncoupled) two-body matrix elements.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsmqa {

enum class Shell { p, sd };

std::string_view to_string(Shell shell);
/// Throws Error(invalid_argument) for anything other than "p" / "sd".
Shell parse_shell(std::string_view text);

enum class Species : std::uint8_t { neutron, proton };

/// Isospin projection in doubled units; neutrons carry t_z = +1/2.
constexpr int two_tz(Species s) { return s == Species::neutron ? 1 : -1; }

struct Orbital {
  std::string label;
  int n = 0;
  int l = 0;
  int two_j = 1;

  int degeneracy() const { return two_j + 1; }
  friend bool operator==(const Orbital&, const Orbital&) = default;
};

/// Orbitals of a shell in natural filling order (p: 0p3/2 0p1/2; sd: 0d5/2 1s1/2 0d3/2).
std::vector<Orbital> shell_orbitals(Shell shell);

struct NucleonMode {
  int index = 0;    ///< global mode index in [0, 2D)
  int orbital = 0;  ///< position in the owning orbital list
  int n = 0;
  int l = 0;
  int two_j = 1;
  int two_m = 1;
  Species species = Species::neutron;
};

struct MassScaling {
  double reference_mass = 18.0;
  double exponent = 0.3;
  double target_mass = 18.0;

  double factor() const;
};

/// Single-particle energies plus coupled (J, T) two-body elements of one shell.
/// Immutable after parsing; orbital indices refer to `orbitals()`.
class InteractionSet {
 public:
  using Key = std::array<int, 6>;  // a, b, c, d, 2J, 2T

  InteractionSet(Shell shell, std::vector<Orbital> orbitals, std::vector<double> sp_energies,
                 std::map<Key, double> coupled_entries);

  Shell shell() const { return shell_; }
  const std::vector<Orbital>& orbitals() const { return orbitals_; }
  double sp_energy(int orbital) const { return sp_energies_.at(static_cast<std::size_t>(orbital)); }
  const std::vector<double>& sp_energies() const { return sp_energies_; }

  /// The elements as read (one representative per (ab, cd) pair).
  const std::map<Key, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// V(a,b,c,d; J,T) for any orbital order; phases from exchange symmetry and
  /// hermiticity are applied. Unstored elements are zero.
  double coupled(int a, int b, int c, int d, int two_J, int two_T) const;

  int orbital_index(std::string_view label) const;

  const std::optional<MassScaling>& mass_scaling() const { return scaling_; }
  /// Copy with every two-body element multiplied by (A0/A)^p.
  InteractionSet with_mass_scaling(const MassScaling& scaling) const;

 private:
  Shell shell_;
  std::vector<Orbital> orbitals_;
  std::vector<double> sp_energies_;
  std::map<Key, double> entries_;
  std::map<Key, double> expanded_;
  std::optional<MassScaling> scaling_;
};

/// Parses the line-oriented format
///   SHELL <p|sd> / ORB <label> <n> <l> <2j> / SPE <label> <MeV> /
///   TBME <a> <b> <c> <d> <2J> <2T> <MeV>
/// with `#` comments. Errors carry the offending line number.
InteractionSet parse_interaction(std::istream& in, std::optional<Shell> expected = std::nullopt);
InteractionSet load_interaction(const std::filesystem::path& path,
                                std::optional<Shell> expected = std::nullopt);

/// Ordered single-particle modes of a shell: neutrons 0..D-1 then mirrored
/// protons D..2D-1. Within a species, orbitals follow `filling_order`, then
/// descending |m|, then m > 0 before m < 0. NucleonMode::orbital indexes
/// `orbitals` (the interaction's declaration order), not the filling order.
class ModeSpace {
 public:
  ModeSpace(Shell shell, std::vector<Orbital> orbitals, std::vector<int> filling_order);

  Shell shell() const { return shell_; }
  const std::vector<Orbital>& orbitals() const { return orbitals_; }
  const std::vector<NucleonMode>& modes() const { return modes_; }
  const NucleonMode& operator[](int i) const { return modes_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(modes_.size()); }
  /// Modes per species.
  int D() const { return size() / 2; }

  std::uint64_t neutron_mask() const { return neutron_mask_; }
  std::uint64_t proton_mask() const { return proton_mask_; }
  int two_m(int mode) const { return modes_[static_cast<std::size_t>(mode)].two_m; }
  int total_two_m(std::uint64_t bits) const;

  /// Index of the mode (orbital, two_m, species); -1 if absent.
  int find(int orbital, int two_m, Species species) const;

 private:
  Shell shell_;
  std::vector<Orbital> orbitals_;
  std::vector<NucleonMode> modes_;
  std::uint64_t neutron_mask_ = 0;
  std::uint64_t proton_mask_ = 0;
};

ModeSpace enumerate_modes(Shell shell);
/// Orbitals ordered by ascending single-particle energy; ties keep declaration order.
ModeSpace enumerate_modes(const InteractionSet& iset);

/// Antisymmetrized m-scheme element v̄_abcd (MeV) from the coupled elements.
/// Modes must come from a ModeSpace built on `iset`'s orbitals.
double decoupled_tbme(const InteractionSet& iset, const NucleonMode& a, const NucleonMode& b,
                      const NucleonMode& c, const NucleonMode& d);

/// v̄ for every ordered pair of modes (a<b, c<d), stored as a dense pair x pair
/// table. Built once per (interaction, mode space).
class TwoBodyTable {
 public:
  TwoBodyTable(const InteractionSet& iset, const ModeSpace& modes);

  int num_modes() const { return n_; }
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  int pair_index(int a, int b) const;  ///< requires a < b
  std::pair<int, int> pair(int p) const { return pairs_[static_cast<std::size_t>(p)]; }

  /// v̄_abcd for any index order (sign from antisymmetry); 0 if a == b or c == d.
  double operator()(int a, int b, int c, int d) const;
  double pair_element(int ab, int cd) const {
    return values_[static_cast<std::size_t>(ab) * pairs_.size() + static_cast<std::size_t>(cd)];
  }

  struct Link {
    int pair;
    double value;
  };
  /// Nonzero couplings from pair cd to every pair ab (including ab == cd).
  const std::vector<Link>& links(int cd) const { return links_[static_cast<std::size_t>(cd)]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> pair_lookup_;
  std::vector<double> values_;
  std::vector<std::vector<Link>> links_;
};

}  // namespace nsmqa
