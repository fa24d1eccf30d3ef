#include "nsmqa/hamiltonian.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "nsmqa/error.hpp"

namespace nsmqa {

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Occupied modes strictly below `i`.
int below(std::uint64_t w, int i) { return std::popcount(w & (bit(i) - 1)); }

}  // namespace

SparseHamiltonian::SparseHamiltonian(const std::vector<std::vector<Entry>>& rows) {
  row_ptr_.reserve(rows.size() + 1);
  row_ptr_.push_back(0);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  cols_.reserve(total);
  vals_.reserve(total);
  for (const auto& r : rows) {
    for (const auto& e : r) {
      cols_.push_back(e.col);
      vals_.push_back(e.value);
    }
    row_ptr_.push_back(cols_.size());
  }
}

SparseHamiltonian SparseHamiltonian::diagonal_matrix(const RealVector& diag) {
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(diag.size()));
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    rows[static_cast<std::size_t>(i)].push_back({static_cast<std::uint32_t>(i), diag[i]});
  return SparseHamiltonian(rows);
}

template <class Vec>
void SparseHamiltonian::apply_impl(const Vec& x, Vec& y) const {
  const auto n = static_cast<std::ptrdiff_t>(dim());
  if (x.size() != n) throw Error(ErrorKind::invalid_argument, "dimension mismatch in apply");
  y.resize(n);
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    typename Vec::Scalar acc(0);
    const auto lo = row_ptr_[static_cast<std::size_t>(i)];
    const auto hi = row_ptr_[static_cast<std::size_t>(i) + 1];
    for (std::size_t k = lo; k < hi; ++k) acc += vals_[k] * x[cols_[k]];
    y[i] = acc;
  }
}

void SparseHamiltonian::apply(const RealVector& x, RealVector& y) const { apply_impl(x, y); }
void SparseHamiltonian::apply(const ComplexVector& x, ComplexVector& y) const { apply_impl(x, y); }

RealVector SparseHamiltonian::operator*(const RealVector& x) const {
  RealVector y;
  apply(x, y);
  return y;
}

ComplexVector SparseHamiltonian::operator*(const ComplexVector& x) const {
  ComplexVector y;
  apply(x, y);
  return y;
}

RealVector SparseHamiltonian::diagonal() const {
  RealVector d = RealVector::Zero(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) d[static_cast<Eigen::Index>(i)] = element(i, i);
  return d;
}

double SparseHamiltonian::element(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(j));
  if (it == last || *it != j) return 0.0;
  return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

double SparseHamiltonian::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      worst = std::max(worst, std::abs(vals_[k] - element(cols_[k], i)));
  return worst;
}

double SparseHamiltonian::norm_bound() const {
  double bound = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(vals_[k]);
    bound = std::max(bound, s);
  }
  return bound;
}

Eigen::MatrixXd SparseHamiltonian::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      m(static_cast<Eigen::Index>(i), cols_[k]) = vals_[k];
  return m;
}

void SparseHamiltonian::write_coordinates(std::ostream& out) const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out << fmt::format("{} {} {}\n", i, cols_[k], vals_[k]);
}

double diagonal_energy(std::uint64_t bits, const ModeSpace& modes, const InteractionSet& iset,
                       const TwoBodyTable& table) {
  double e = 0.0;
  std::vector<int> occ;
  for (std::uint64_t w = bits; w; w &= w - 1) occ.push_back(std::countr_zero(w));
  for (int a : occ) e += iset.sp_energy(modes[a].orbital);
  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y) e += table(occ[x], occ[y], occ[x], occ[y]);
  return e;
}

SparseHamiltonian assemble_target(const ManyBodyBasis& basis, const InteractionSet& iset,
                                  const TwoBodyTable& table) {
  const ModeSpace& modes = basis.modes();
  if (iset.shell() != modes.shell() || iset.orbitals() != modes.orbitals())
    throw Error(ErrorKind::invalid_argument, "basis and interaction belong to different shells");

  std::vector<double> spe(static_cast<std::size_t>(modes.size()));
  for (int a = 0; a < modes.size(); ++a)
    spe[static_cast<std::size_t>(a)] = iset.sp_energy(modes[a].orbital);

  const auto n = static_cast<std::ptrdiff_t>(basis.size());
  std::vector<std::vector<SparseHamiltonian::Entry>> rows(basis.size());
  std::atomic<bool> closed{true};

#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::uint64_t w = basis.bits(static_cast<std::size_t>(i));
    std::vector<int> occ;
    for (std::uint64_t t = w; t; t &= t - 1) occ.push_back(std::countr_zero(t));

    double diag = 0.0;
    for (int a : occ) diag += spe[static_cast<std::size_t>(a)];

    std::vector<SparseHamiltonian::Entry> row;
    for (std::size_t x = 0; x < occ.size(); ++x) {
      const int c = occ[x];
      const std::uint64_t w1 = w ^ bit(c);
      const int s1 = below(w, c);
      for (std::size_t y = x + 1; y < occ.size(); ++y) {
        const int d = occ[y];
        const std::uint64_t w2 = w1 ^ bit(d);
        const int s2 = s1 + below(w1, d);
        for (const auto& link : table.links(table.pair_index(c, d))) {
          const auto [a, b] = table.pair(link.pair);
          if (w2 & (bit(a) | bit(b))) continue;
          const std::uint64_t w3 = w2 | bit(b);
          const std::uint64_t w4 = w3 | bit(a);
          const int parity = s2 + below(w2, b) + below(w3, a);
          const double v = (parity % 2 == 0) ? link.value : -link.value;
          if (w4 == w) {
            diag += v;
            continue;
          }
          const auto j = basis.index_of(w4);
          if (!j) {
            closed.store(false, std::memory_order_relaxed);
            continue;
          }
          row.push_back({static_cast<std::uint32_t>(*j), v});
        }
      }
    }
    row.push_back({static_cast<std::uint32_t>(i), diag});
    std::sort(row.begin(), row.end(), [](const auto& p, const auto& q) { return p.col < q.col; });

    auto& out = rows[static_cast<std::size_t>(i)];
    for (const auto& e : row) {
      if (!out.empty() && out.back().col == e.col)
        out.back().value += e.value;
      else
        out.push_back(e);
    }
    std::erase_if(out, [i](const auto& e) {
      return e.col != static_cast<std::uint32_t>(i) && std::abs(e.value) < 1e-13;
    });
  }
  if (!closed) throw Error(ErrorKind::numerical, "basis is not closed under the Hamiltonian");
  return SparseHamiltonian(rows);
}

SparseHamiltonian assemble_target(const ManyBodyBasis& basis, const InteractionSet& iset) {
  return assemble_target(basis, iset, TwoBodyTable(iset, basis.modes()));
}

ReferenceState reference_state(const ManyBodyBasis& basis, const InteractionSet& iset,
                               const TwoBodyTable& table, const SparseHamiltonian& target) {
  const ModeSpace& modes = basis.modes();
  std::uint64_t bits = 0;
  for (int i = 0; i < basis.neutrons(); ++i) bits |= bit(i);
  for (int i = 0; i < basis.protons(); ++i) bits |= bit(modes.D() + i);

  ReferenceState ref;
  ref.determinant = make_determinant(modes, bits);
  const auto idx = basis.index_of(bits);
  if (!idx) throw Error(ErrorKind::invalid_argument, "reference determinant is outside the basis");
  ref.index = *idx;
  ref.E0 = target.element(ref.index, ref.index);
  const double direct = diagonal_energy(bits, modes, iset, table);
  if (std::abs(direct - ref.E0) > 1e-9 * std::max(1.0, std::abs(direct)))
    throw Error(ErrorKind::numerical,
                fmt::format("reference energy mismatch: {} vs {}", ref.E0, direct));
  return ref;
}

SparseHamiltonian build_driver(const ReferenceState& ref, const ManyBodyBasis& basis) {
  const int particles = basis.neutrons() + basis.protons();
  if (particles == 0) throw Error(ErrorKind::invalid_argument, "driver needs at least one nucleon");
  if (!std::isfinite(ref.E0) || ref.E0 >= 0.0)
    throw Error(ErrorKind::numerical,
                fmt::format("reference energy E0 = {} MeV is not negative; the driver ground "
                            "state would not be the reference determinant",
                            ref.E0));
  const double scale = ref.E0 / particles;
  RealVector diag(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    diag[static_cast<Eigen::Index>(i)] = scale * std::popcount(basis.bits(i) & ref.determinant.bits);
  return SparseHamiltonian::diagonal_matrix(diag);
}

InterpolatedOperator::InterpolatedOperator(const SparseHamiltonian& driver,
                                           const SparseHamiltonian& target, double lambda)
    : driver_(&driver), target_(&target), driver_diag_(driver.diagonal()), lambda_(0.0) {
  if (driver.dim() != target.dim())
    throw Error(ErrorKind::invalid_argument, "driver and target dimensions differ");
  if (driver.nonzeros() != driver.dim())
    throw Error(ErrorKind::invalid_argument, "driver must be diagonal");
  set_lambda(lambda);
}

void InterpolatedOperator::set_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorKind::invalid_argument, fmt::format("lambda {} outside [0, 1]", lambda));
  lambda_ = lambda;
}

void InterpolatedOperator::apply(const RealVector& x, RealVector& y) const {
  target_->apply(x, y);
  y = lambda_ * y + (1.0 - lambda_) * driver_diag_.cwiseProduct(x);
}

void InterpolatedOperator::apply(const ComplexVector& x, ComplexVector& y) const {
  target_->apply(x, y);
  y = lambda_ * y + (1.0 - lambda_) * (driver_diag_.cast<std::complex<double>>().cwiseProduct(x));
}

double InterpolatedOperator::norm_bound() const {
  return (1.0 - lambda_) * driver_diag_.cwiseAbs().maxCoeff() + lambda_ * target_->norm_bound();
}

}  // namespace nsmqa
