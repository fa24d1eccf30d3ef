#include "nsmqa/fockbasis.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include <fmt/format.h>

#include "nsmqa/error.hpp"

namespace nsmqa {

namespace {

// All words with `k` bits set among the low `n` bits, ascending.
std::vector<std::uint64_t> combinations(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::uint64_t w = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (w < limit) {
    out.push_back(w);
    // Gosper's hack: next word with the same popcount.
    const std::uint64_t c = w & (~w + 1);
    const std::uint64_t r = w + c;
    w = (((r ^ w) >> 2) / c) | r;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

int total_m(const ModeSpace& modes, std::uint64_t bits) { return modes.total_two_m(bits); }

SlaterDeterminant make_determinant(const ModeSpace& modes, std::uint64_t bits) {
  SlaterDeterminant s;
  s.bits = bits;
  s.two_M = modes.total_two_m(bits);
  s.n_count = std::popcount(bits & modes.neutron_mask());
  s.z_count = std::popcount(bits & modes.proton_mask());
  return s;
}

std::uint64_t full_space_dimension(int D, int n_neutrons, int n_protons) {
  return binomial(D, n_neutrons) * binomial(D, n_protons);
}

std::uint64_t reflect_m(const ModeSpace& modes, std::uint64_t bits) {
  std::uint64_t out = 0;
  while (bits) {
    const int i = std::countr_zero(bits);
    bits &= bits - 1;
    const NucleonMode& m = modes[i];
    const int j = modes.find(m.orbital, -m.two_m, m.species);
    out |= std::uint64_t{1} << j;
  }
  return out;
}

ManyBodyBasis::ManyBodyBasis(ModeSpace modes, int n_neutrons, int n_protons,
                             std::optional<int> two_M)
    : modes_(std::move(modes)), n_(n_neutrons), z_(n_protons), two_M_(two_M) {
  const int d = modes_.D();
  if (n_ < 0 || z_ < 0) throw Error(ErrorKind::invalid_argument, "negative particle number");
  if (n_ > d || z_ > d)
    throw Error(ErrorKind::invalid_argument,
                fmt::format("particle number exceeds the {} modes per species", d));

  const auto neutrons = combinations(d, n_);
  const auto protons = combinations(d, z_);

  std::vector<int> n_m(neutrons.size());
  for (std::size_t i = 0; i < neutrons.size(); ++i) n_m[i] = modes_.total_two_m(neutrons[i]);

  for (std::uint64_t pw : protons) {
    const std::uint64_t pbits = pw << d;
    const int pm = modes_.total_two_m(pbits);
    for (std::size_t i = 0; i < neutrons.size(); ++i) {
      if (two_M_ && n_m[i] + pm != *two_M_) continue;
      SlaterDeterminant s;
      s.bits = pbits | neutrons[i];
      s.two_M = n_m[i] + pm;
      s.n_count = n_;
      s.z_count = z_;
      states_.push_back(s);
    }
  }
  std::sort(states_.begin(), states_.end(),
            [](const SlaterDeterminant& x, const SlaterDeterminant& y) { return x.bits < y.bits; });
  sorted_bits_.reserve(states_.size());
  for (const auto& s : states_) sorted_bits_.push_back(s.bits);
}

std::optional<std::size_t> ManyBodyBasis::index_of(std::uint64_t bits) const {
  auto it = std::lower_bound(sorted_bits_.begin(), sorted_bits_.end(), bits);
  if (it == sorted_bits_.end() || *it != bits) return std::nullopt;
  return static_cast<std::size_t>(it - sorted_bits_.begin());
}

void ManyBodyBasis::write_csv(std::ostream& out) const {
  out << "index,bits_hex,two_M\n";
  for (std::size_t i = 0; i < states_.size(); ++i)
    out << fmt::format("{},{:#x},{}\n", i, states_[i].bits, states_[i].two_M);
}

ManyBodyBasis build_m0_basis(const ModeSpace& modes, int n_neutrons, int n_protons) {
  return ManyBodyBasis(modes, n_neutrons, n_protons, 0);
}

ManyBodyBasis build_m0_basis(Shell shell, int n_neutrons, int n_protons) {
  return ManyBodyBasis(enumerate_modes(shell), n_neutrons, n_protons, 0);
}

}  // namespace nsmqa
