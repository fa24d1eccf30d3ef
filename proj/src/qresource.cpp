#include "nsmqa/qresource.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "nsmqa/error.hpp"

namespace nsmqa {

namespace {

using cd = std::complex<double>;

cd i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::uint64_t below_mask(int j) { return (std::uint64_t{1} << j) - 1; }

}  // namespace

int PauliString::weight() const { return std::popcount(x | z); }

std::string PauliString::pattern(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) {
    const bool bx = (x >> q) & 1u, bz = (z >> q) & 1u;
    s[static_cast<std::size_t>(q)] = bx && bz ? 'Y' : bx ? 'X' : bz ? 'Z' : 'I';
  }
  return s;
}

PauliSum PauliSum::identity(cd c) {
  PauliSum p;
  p.add({0, 0}, c);
  return p;
}

// a+_j = Z_{<j} (X_j - i Y_j) / 2
PauliSum PauliSum::creation(int mode) {
  const std::uint64_t b = std::uint64_t{1} << mode;
  PauliSum p;
  p.add({b, below_mask(mode)}, 0.5);
  p.add({b, below_mask(mode) | b}, cd(0.0, -0.5));
  return p;
}

// a_j = Z_{<j} (X_j + i Y_j) / 2
PauliSum PauliSum::annihilation(int mode) {
  const std::uint64_t b = std::uint64_t{1} << mode;
  PauliSum p;
  p.add({b, below_mask(mode)}, 0.5);
  p.add({b, below_mask(mode) | b}, cd(0.0, 0.5));
  return p;
}

void PauliSum::add(Key key, cd c) {
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) it->second += c;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  PauliSum out;
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : other.terms_) {
      const auto [x1, z1] = k1;
      const auto [x2, z2] = k2;
      const std::uint64_t x = x1 ^ x2, z = z1 ^ z2;
      const int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) - std::popcount(x & z) +
                    2 * std::popcount(z1 & x2);
      out.add({x, z}, c1 * c2 * i_power(k));
    }
  }
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cd c) {
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

void PauliHamiltonian::write_table(std::ostream& out) const {
  for (const auto& t : terms) out << fmt::format("{:+.17g}  {}\n", t.coeff, t.pattern(n_qubits));
}

PauliHamiltonian jordan_wigner_map(const InteractionSet& iset, const ModeSpace& modes,
                                   double prune) {
  const TwoBodyTable table(iset, modes);
  const int n = modes.size();
  std::vector<PauliSum> up, down;
  for (int j = 0; j < n; ++j) {
    up.push_back(PauliSum::creation(j));
    down.push_back(PauliSum::annihilation(j));
  }

  PauliSum h;
  for (int a = 0; a < n; ++a) {
    PauliSum term = up[static_cast<std::size_t>(a)] * down[static_cast<std::size_t>(a)];
    term *= iset.sp_energy(modes[a].orbital);
    h += term;
  }
  for (int cdp = 0; cdp < table.num_pairs(); ++cdp) {
    const auto [c, d] = table.pair(cdp);
    const PauliSum lower = down[static_cast<std::size_t>(d)] * down[static_cast<std::size_t>(c)];
    for (const auto& link : table.links(cdp)) {
      const auto [a, b] = table.pair(link.pair);
      PauliSum term = (up[static_cast<std::size_t>(a)] * up[static_cast<std::size_t>(b)]) * lower;
      term *= link.value;
      h += term;
    }
  }

  PauliHamiltonian ph;
  ph.n_qubits = n;
  for (const auto& [key, c] : h.terms()) {
    if (std::abs(c) < prune) continue;
    if (std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c)))
      throw Error(ErrorKind::numerical, "Jordan-Wigner image is not Hermitian");
    ph.terms.push_back({key.first, key.second, c.real()});
  }
  return ph;
}

std::uint64_t staircase_cnots(int weight) {
  return weight >= 2 ? static_cast<std::uint64_t>(2 * (weight - 1)) : 0;
}

std::uint64_t cnot_count_trotter_step(const PauliHamiltonian& ph) {
  std::uint64_t total = 0;
  for (const auto& t : ph.terms) total += staircase_cnots(t.weight());
  return total;
}

CostReport cost_report(const PauliHamiltonian& ph, Shell shell) {
  CostReport r;
  r.shell = std::string(to_string(shell));
  r.D = ph.n_qubits / 2;
  r.R = ph.R();
  r.total_cnot = cnot_count_trotter_step(ph);
  std::size_t counted = 0;
  double sum = 0.0;
  for (const auto& t : ph.terms) {
    if (t.weight() == 0) continue;
    sum += t.weight();
    ++counted;
  }
  r.avg_weight = counted ? sum / static_cast<double>(counted) : 0.0;
  return r;
}

Eigen::MatrixXd restrict_to_basis(const PauliHamiltonian& ph, const ManyBodyBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    const std::uint64_t s = basis.bits(static_cast<std::size_t>(col));
    for (const auto& t : ph.terms) {
      const auto row = basis.index_of(s ^ t.x);
      if (!row) continue;
      const int k = std::popcount(t.x & t.z) + 2 * std::popcount(t.z & s);
      m(static_cast<Eigen::Index>(*row), col) += t.coeff * i_power(k);
    }
  }
  if (m.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw Error(ErrorKind::numerical, "restricted Pauli matrix is not real");
  return m.real();
}

}  // namespace nsmqa
