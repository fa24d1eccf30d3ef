#include "nsmqa/valence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "nsmqa/angular.hpp"
#include "nsmqa/error.hpp"

namespace nsmqa {

std::string_view to_string(Shell shell) { return shell == Shell::p ? "p" : "sd"; }

Shell parse_shell(std::string_view text) {
  if (text == "p") return Shell::p;
  if (text == "sd") return Shell::sd;
  throw Error(ErrorKind::invalid_argument, "unknown shell '" + std::string(text) + "'");
}

std::vector<Orbital> shell_orbitals(Shell shell) {
  if (shell == Shell::p) return {{"p3/2", 0, 1, 3}, {"p1/2", 0, 1, 1}};
  return {{"d5/2", 0, 2, 5}, {"s1/2", 1, 0, 1}, {"d3/2", 0, 2, 3}};
}

double MassScaling::factor() const { return std::pow(reference_mass / target_mass, exponent); }

namespace {

int phase(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

// Exchange phase for |ba; JT> = (-1)^(ja + jb - J - T) |ab; JT>.
int exchange_phase(int two_ja, int two_jb, int two_J, int two_T) {
  return phase((two_ja + two_jb - two_J - two_T) / 2);
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw Error(ErrorKind::parse, "interaction line " + std::to_string(line) + ": " + message);
}

}  // namespace

InteractionSet::InteractionSet(Shell shell, std::vector<Orbital> orbitals,
                               std::vector<double> sp_energies, std::map<Key, double> entries)
    : shell_(shell),
      orbitals_(std::move(orbitals)),
      sp_energies_(std::move(sp_energies)),
      entries_(std::move(entries)) {
  if (sp_energies_.size() != orbitals_.size())
    throw Error(ErrorKind::invalid_argument, "one single-particle energy per orbital required");

  for (const auto& [key, value] : entries_) {
    const auto [a, b, c, d, two_J, two_T] = key;
    const int ja = orbitals_.at(a).two_j, jb = orbitals_.at(b).two_j;
    const int jc = orbitals_.at(c).two_j, jd = orbitals_.at(d).two_j;
    const int pab = exchange_phase(ja, jb, two_J, two_T);
    const int pcd = exchange_phase(jc, jd, two_J, two_T);
    const std::array<std::tuple<int, int, int>, 2> bra{{{a, b, 1}, {b, a, pab}}};
    const std::array<std::tuple<int, int, int>, 2> ket{{{c, d, 1}, {d, c, pcd}}};
    for (const auto& [x, y, px] : bra) {
      for (const auto& [z, w, pz] : ket) {
        const double v = px * pz * value;
        for (const Key& k : {Key{x, y, z, w, two_J, two_T}, Key{z, w, x, y, two_J, two_T}}) {
          auto [it, inserted] = expanded_.emplace(k, v);
          if (!inserted && std::abs(it->second - v) > 1e-8)
            throw Error(ErrorKind::parse, "inconsistent or non-Hermitian two-body elements");
        }
      }
    }
  }
}

double InteractionSet::coupled(int a, int b, int c, int d, int two_J, int two_T) const {
  auto it = expanded_.find(Key{a, b, c, d, two_J, two_T});
  return it == expanded_.end() ? 0.0 : it->second;
}

int InteractionSet::orbital_index(std::string_view label) const {
  for (std::size_t i = 0; i < orbitals_.size(); ++i)
    if (orbitals_[i].label == label) return static_cast<int>(i);
  return -1;
}

InteractionSet InteractionSet::with_mass_scaling(const MassScaling& scaling) const {
  if (!(scaling.reference_mass > 0.0) || !(scaling.target_mass > 0.0))
    throw Error(ErrorKind::invalid_argument, "mass scaling needs positive masses");
  const double f = scaling.factor();
  std::map<Key, double> scaled;
  for (const auto& [k, v] : entries_) scaled.emplace(k, v * f);
  InteractionSet out(shell_, orbitals_, sp_energies_, std::move(scaled));
  out.scaling_ = scaling;
  return out;
}

InteractionSet parse_interaction(std::istream& in, std::optional<Shell> expected) {
  std::optional<Shell> shell;
  std::vector<Orbital> orbitals;
  std::vector<std::optional<double>> spe;
  std::map<InteractionSet::Key, double> entries;

  auto lookup = [&](const std::string& label, int line) {
    for (std::size_t i = 0; i < orbitals.size(); ++i)
      if (orbitals[i].label == label) return static_cast<int>(i);
    parse_fail(line, "unknown orbital label '" + label + "'");
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag)) continue;

    auto finish = [&] {
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "unexpected trailing token '" + extra + "'");
    };

    if (tag == "SHELL") {
      std::string name;
      if (shell || !(ls >> name)) parse_fail(line_no, "malformed SHELL line");
      try {
        shell = parse_shell(name);
      } catch (const Error&) {
        parse_fail(line_no, "unknown shell '" + name + "'");
      }
      if (expected && *expected != *shell) parse_fail(line_no, "shell does not match the request");
      finish();
      continue;
    }
    if (!shell) parse_fail(line_no, "SHELL must be the first directive");

    if (tag == "ORB") {
      Orbital o;
      if (!(ls >> o.label >> o.n >> o.l >> o.two_j)) parse_fail(line_no, "malformed ORB line");
      finish();
      const auto allowed = shell_orbitals(*shell);
      const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const Orbital& x) {
        return x.n == o.n && x.l == o.l && x.two_j == o.two_j;
      });
      if (!known) parse_fail(line_no, "orbital '" + o.label + "' is not in the " +
                                          std::string(to_string(*shell)) + " shell");
      for (const auto& x : orbitals)
        if (x.label == o.label || (x.n == o.n && x.l == o.l && x.two_j == o.two_j))
          parse_fail(line_no, "duplicate orbital '" + o.label + "'");
      orbitals.push_back(o);
      spe.emplace_back();
    } else if (tag == "SPE") {
      std::string label;
      double e = 0.0;
      if (!(ls >> label >> e)) parse_fail(line_no, "malformed SPE line");
      finish();
      const int i = lookup(label, line_no);
      if (spe[static_cast<std::size_t>(i)]) parse_fail(line_no, "duplicate SPE for '" + label + "'");
      spe[static_cast<std::size_t>(i)] = e;
    } else if (tag == "TBME") {
      std::array<std::string, 4> labels;
      int two_J = 0, two_T = 0;
      double v = 0.0;
      if (!(ls >> labels[0] >> labels[1] >> labels[2] >> labels[3] >> two_J >> two_T >> v))
        parse_fail(line_no, "malformed TBME line");
      finish();
      std::array<int, 4> o{};
      for (int k = 0; k < 4; ++k) o[k] = lookup(labels[k], line_no);
      const auto& oa = orbitals[o[0]];
      const auto& ob = orbitals[o[1]];
      const auto& oc = orbitals[o[2]];
      const auto& od = orbitals[o[3]];
      if (two_T != 0 && two_T != 2) parse_fail(line_no, "2T must be 0 or 2");
      if (two_J % 2 != 0) parse_fail(line_no, "2J must be even for a two-nucleon state");
      if (!triangle(oa.two_j, ob.two_j, two_J) || !triangle(oc.two_j, od.two_j, two_J))
        parse_fail(line_no, "J violates the triangle rule");
      if ((oa.l + ob.l + oc.l + od.l) % 2 != 0) parse_fail(line_no, "parity is not conserved");
      const int JT = (two_J + two_T) / 2;
      if (((o[0] == o[1]) || (o[2] == o[3])) && JT % 2 == 0 && v != 0.0)
        parse_fail(line_no, "Pauli-forbidden element (identical orbitals need J+T odd)");
      InteractionSet::Key key{o[0], o[1], o[2], o[3], two_J, two_T};
      InteractionSet::Key mirror{o[2], o[3], o[0], o[1], two_J, two_T};
      if (entries.count(key)) parse_fail(line_no, "duplicate TBME");
      if (auto it = entries.find(mirror); it != entries.end()) {
        if (std::abs(it->second - v) > 1e-8) parse_fail(line_no, "non-Hermitian TBME pair");
        continue;
      }
      if (((o[0] == o[1]) || (o[2] == o[3])) && JT % 2 == 0) continue;
      entries.emplace(key, v);
    } else {
      parse_fail(line_no, "unknown directive '" + tag + "'");
    }
  }

  if (!shell) throw Error(ErrorKind::parse, "interaction file has no SHELL line");
  if (orbitals.size() != shell_orbitals(*shell).size())
    throw Error(ErrorKind::parse, "interaction file must declare every orbital of the shell");
  std::vector<double> energies;
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    if (!spe[i])
      throw Error(ErrorKind::parse,
                  "missing single-particle energy for orbital '" + orbitals[i].label + "'");
    energies.push_back(*spe[i]);
  }
  return InteractionSet(*shell, std::move(orbitals), std::move(energies), std::move(entries));
}

InteractionSet load_interaction(const std::filesystem::path& path, std::optional<Shell> expected) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_file, "cannot open interaction file " + path.string());
  try {
    return parse_interaction(in, expected);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

ModeSpace::ModeSpace(Shell shell, std::vector<Orbital> orbitals, std::vector<int> filling_order)
    : shell_(shell), orbitals_(std::move(orbitals)) {
  std::vector<int> check = filling_order;
  std::sort(check.begin(), check.end());
  std::vector<int> expect(orbitals_.size());
  std::iota(expect.begin(), expect.end(), 0);
  if (check != expect) throw Error(ErrorKind::invalid_argument, "filling order is not a permutation");

  for (Species species : {Species::neutron, Species::proton}) {
    for (int o : filling_order) {
      const Orbital& orb = orbitals_[static_cast<std::size_t>(o)];
      for (int abs_m = orb.two_j; abs_m >= 1; abs_m -= 2) {
        for (int two_m : {abs_m, -abs_m}) {
          NucleonMode m;
          m.index = static_cast<int>(modes_.size());
          m.orbital = o;
          m.n = orb.n;
          m.l = orb.l;
          m.two_j = orb.two_j;
          m.two_m = two_m;
          m.species = species;
          modes_.push_back(m);
        }
      }
    }
  }
  if (modes_.size() > 64) throw Error(ErrorKind::invalid_argument, "more than 64 modes");
  const int d = D();
  for (int i = 0; i < d; ++i) neutron_mask_ |= std::uint64_t{1} << i;
  proton_mask_ = neutron_mask_ << d;
}

int ModeSpace::total_two_m(std::uint64_t bits) const {
  int sum = 0;
  while (bits) {
    const int i = std::countr_zero(bits);
    sum += modes_[static_cast<std::size_t>(i)].two_m;
    bits &= bits - 1;
  }
  return sum;
}

int ModeSpace::find(int orbital, int two_m, Species species) const {
  for (const auto& m : modes_)
    if (m.orbital == orbital && m.two_m == two_m && m.species == species) return m.index;
  return -1;
}

ModeSpace enumerate_modes(Shell shell) {
  auto orbitals = shell_orbitals(shell);
  std::vector<int> order(orbitals.size());
  std::iota(order.begin(), order.end(), 0);
  return ModeSpace(shell, std::move(orbitals), std::move(order));
}

ModeSpace enumerate_modes(const InteractionSet& iset) {
  std::vector<int> order(iset.orbitals().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return iset.sp_energy(x) < iset.sp_energy(y); });
  return ModeSpace(iset.shell(), iset.orbitals(), std::move(order));
}

double decoupled_tbme(const InteractionSet& iset, const NucleonMode& a, const NucleonMode& b,
                      const NucleonMode& c, const NucleonMode& d) {
  if (a.two_m + b.two_m != c.two_m + d.two_m) return 0.0;
  const int two_Tz = two_tz(a.species) + two_tz(b.species);
  if (two_Tz != two_tz(c.species) + two_tz(d.species)) return 0.0;
  const int two_M = a.two_m + b.two_m;

  const double norm_ab = a.orbital == b.orbital ? std::sqrt(2.0) : 1.0;
  const double norm_cd = c.orbital == d.orbital ? std::sqrt(2.0) : 1.0;

  double total = 0.0;
  for (int two_T = 0; two_T <= 2; two_T += 2) {
    const double cg_t = clebsch_gordan(1, two_tz(a.species), 1, two_tz(b.species), two_T, two_Tz) *
                        clebsch_gordan(1, two_tz(c.species), 1, two_tz(d.species), two_T, two_Tz);
    if (cg_t == 0.0) continue;
    const int lo = std::max(std::abs(a.two_j - b.two_j), std::abs(c.two_j - d.two_j));
    const int hi = std::min(a.two_j + b.two_j, c.two_j + d.two_j);
    for (int two_J = lo; two_J <= hi; two_J += 2) {
      const double v = iset.coupled(a.orbital, b.orbital, c.orbital, d.orbital, two_J, two_T);
      if (v == 0.0) continue;
      const double cg_j = clebsch_gordan(a.two_j, a.two_m, b.two_j, b.two_m, two_J, two_M) *
                          clebsch_gordan(c.two_j, c.two_m, d.two_j, d.two_m, two_J, two_M);
      total += norm_ab * norm_cd * cg_j * cg_t * v;
    }
  }
  return total;
}

TwoBodyTable::TwoBodyTable(const InteractionSet& iset, const ModeSpace& modes) : n_(modes.size()) {
  if (iset.shell() != modes.shell() || iset.orbitals() != modes.orbitals())
    throw Error(ErrorKind::invalid_argument, "mode space and interaction describe different shells");
  pair_lookup_.assign(static_cast<std::size_t>(n_ * n_), -1);
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      pair_lookup_[static_cast<std::size_t>(a * n_ + b)] = static_cast<int>(pairs_.size());
      pairs_.emplace_back(a, b);
    }
  const std::size_t np = pairs_.size();
  values_.assign(np * np, 0.0);
  links_.resize(np);
  for (std::size_t ab = 0; ab < np; ++ab) {
    const auto [a, b] = pairs_[ab];
    for (std::size_t cd = ab; cd < np; ++cd) {
      const auto [c, d] = pairs_[cd];
      const double v = decoupled_tbme(iset, modes[a], modes[b], modes[c], modes[d]);
      values_[ab * np + cd] = v;
      values_[cd * np + ab] = v;
    }
  }
  for (std::size_t cd = 0; cd < np; ++cd)
    for (std::size_t ab = 0; ab < np; ++ab)
      if (const double v = values_[ab * np + cd]; std::abs(v) > 1e-14)
        links_[cd].push_back({static_cast<int>(ab), v});
}

int TwoBodyTable::pair_index(int a, int b) const {
  return pair_lookup_[static_cast<std::size_t>(a * n_ + b)];
}

double TwoBodyTable::operator()(int a, int b, int c, int d) const {
  if (a == b || c == d) return 0.0;
  int sign = 1;
  if (a > b) std::swap(a, b), sign = -sign;
  if (c > d) std::swap(c, d), sign = -sign;
  return sign * pair_element(pair_index(a, b), pair_index(c, d));
}

}  // namespace nsmqa
