#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsmqa/fockbasis.hpp"
#include "nsmqa/hamiltonian.hpp"
#include "nsmqa/valence.hpp"

namespace nsmqa {

struct Nucleus {
  std::string name;  ///< e.g. "Be8"
  Shell shell;
  int neutrons;  ///< valence neutrons
  int protons;   ///< valence protons
  int mass_number;
  std::size_t m0_dimension;  ///< tabulated dim F_0
};

/// The fifteen studied nuclei, p shell first.
const std::vector<Nucleus>& nucleus_table();
/// Accepts "Be8", "be8" or "8Be". Throws Error(unknown_nucleus).
const Nucleus& find_nucleus(std::string_view name);

/// Directory holding the bundled interaction files ($NSM_DATA_DIR overrides).
std::filesystem::path data_directory();
std::filesystem::path default_interaction_path(Shell shell);

/// Everything one anneal needs, built once and shared read-only.
class NuclearSystem {
 public:
  NuclearSystem(Nucleus nucleus, InteractionSet iset);

  const Nucleus& nucleus() const { return nucleus_; }
  const InteractionSet& interaction() const { return iset_; }
  const ModeSpace& modes() const { return basis_.modes(); }
  const TwoBodyTable& table() const { return *table_; }
  const ManyBodyBasis& basis() const { return basis_; }
  const SparseHamiltonian& target() const { return target_; }
  const ReferenceState& reference() const { return reference_; }
  const SparseHamiltonian& driver() const { return driver_; }
  std::size_t dim() const { return basis_.size(); }

 private:
  Nucleus nucleus_;
  InteractionSet iset_;
  std::unique_ptr<TwoBodyTable> table_;
  ManyBodyBasis basis_;
  SparseHamiltonian target_;
  ReferenceState reference_;
  SparseHamiltonian driver_;
};

struct SystemOptions {
  std::optional<std::filesystem::path> interaction;
  /// Reference mass and exponent; the target mass is the nucleus' A.
  std::optional<std::pair<double, double>> mass_scaling;
};

std::shared_ptr<const NuclearSystem> load_system(const Nucleus& nucleus,
                                                 const SystemOptions& options = {});

}  // namespace nsmqa
