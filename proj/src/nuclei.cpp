#include "nsmqa/nuclei.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "nsmqa/error.hpp"

namespace nsmqa {

const std::vector<Nucleus>& nucleus_table() {
  static const std::vector<Nucleus> table = {
      {"Be8", Shell::p, 2, 2, 8, 51},        {"Be10", Shell::p, 4, 2, 10, 51},
      {"Be12", Shell::p, 6, 2, 12, 5},       {"C12", Shell::p, 4, 4, 12, 51},
      {"O18", Shell::sd, 2, 0, 18, 14},      {"O20", Shell::sd, 4, 0, 20, 81},
      {"O22", Shell::sd, 6, 0, 22, 142},     {"Ne20", Shell::sd, 2, 2, 20, 640},
      {"Ne22", Shell::sd, 4, 2, 22, 4206},   {"Ne24", Shell::sd, 6, 2, 24, 7562},
      {"Mg24", Shell::sd, 4, 4, 24, 28503},  {"Mg26", Shell::sd, 6, 4, 26, 51630},
      {"Si28", Shell::sd, 6, 6, 28, 93710},  {"Si30", Shell::sd, 8, 6, 30, 51630},
      {"Ar32", Shell::sd, 6, 10, 32, 7562},
  };
  return table;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

const Nucleus& find_nucleus(std::string_view name) {
  std::string key = lower(name);
  // "8be" -> "be8"
  const auto digits = key.find_first_not_of("0123456789");
  if (digits != 0 && digits != std::string::npos) key = key.substr(digits) + key.substr(0, digits);
  for (const auto& n : nucleus_table())
    if (lower(n.name) == key) return n;
  throw Error(ErrorKind::unknown_nucleus, "unknown nucleus '" + std::string(name) + "'");
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("NSM_DATA_DIR"); env && *env) return env;
  return NSMQA_DEFAULT_DATA_DIR;
}

std::filesystem::path default_interaction_path(Shell shell) {
  return data_directory() / (shell == Shell::p ? "p-sdi.int" : "sd-sdi.int");
}

NuclearSystem::NuclearSystem(Nucleus nucleus, InteractionSet iset)
    : nucleus_(std::move(nucleus)),
      iset_(std::move(iset)),
      basis_(enumerate_modes(iset_), nucleus_.neutrons, nucleus_.protons, 0) {
  if (iset_.shell() != nucleus_.shell)
    throw Error(ErrorKind::invalid_argument,
                nucleus_.name + " lives in the " + std::string(to_string(nucleus_.shell)) +
                    " shell but the interaction is for the " +
                    std::string(to_string(iset_.shell())) + " shell");
  table_ = std::make_unique<TwoBodyTable>(iset_, basis_.modes());
  target_ = assemble_target(basis_, iset_, *table_);
  reference_ = reference_state(basis_, iset_, *table_, target_);
  driver_ = build_driver(reference_, basis_);
}

std::shared_ptr<const NuclearSystem> load_system(const Nucleus& nucleus,
                                                 const SystemOptions& options) {
  const auto path = options.interaction.value_or(default_interaction_path(nucleus.shell));
  InteractionSet iset = load_interaction(path, nucleus.shell);
  if (options.mass_scaling) {
    MassScaling ms;
    ms.reference_mass = options.mass_scaling->first;
    ms.exponent = options.mass_scaling->second;
    ms.target_mass = nucleus.mass_number;
    iset = iset.with_mass_scaling(ms);
  }
  return std::make_shared<const NuclearSystem>(nucleus, std::move(iset));
}

}  // namespace nsmqa
