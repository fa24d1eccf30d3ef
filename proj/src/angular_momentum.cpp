#include <bit>
#include <cmath>

#include "nsmqa/error.hpp"
#include "nsmqa/spectra.hpp"

namespace nsmqa {

RaisingOperator::RaisingOperator(const ManyBodyBasis& basis) {
  if (!basis.two_M()) throw Error(ErrorKind::invalid_argument, "J+ needs a fixed-M basis");
  two_M_ = *basis.two_M();
  const ModeSpace& modes = basis.modes();
  target_ = std::make_shared<ManyBodyBasis>(modes, basis.neutrons(), basis.protons(), two_M_ + 2);

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const std::uint64_t w = basis.bits(col);
    for (std::uint64_t t = w; t; t &= t - 1) {
      const int a = std::countr_zero(t);
      const NucleonMode& m = modes[a];
      if (m.two_m == m.two_j) continue;
      const int up = modes.find(m.orbital, m.two_m + 2, m.species);
      if (w & (std::uint64_t{1} << up)) continue;
      const std::uint64_t w1 = w ^ (std::uint64_t{1} << a);
      const int parity = std::popcount(w & ((std::uint64_t{1} << a) - 1)) +
                         std::popcount(w1 & ((std::uint64_t{1} << up) - 1));
      const double coeff = 0.5 * std::sqrt(static_cast<double>((m.two_j - m.two_m) *
                                                               (m.two_j + m.two_m + 2)));
      const auto row = target_->index_of(w1 | (std::uint64_t{1} << up));
      triplets.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                            parity % 2 == 0 ? coeff : -coeff);
    }
  }
  jplus_.resize(static_cast<Eigen::Index>(target_->size()), static_cast<Eigen::Index>(basis.size()));
  jplus_.setFromTriplets(triplets.begin(), triplets.end());
}

double RaisingOperator::j_squared(const RealVector& psi) const {
  const double M = two_M_ / 2.0;
  return (jplus_ * psi).squaredNorm() + M * (M + 1.0) * psi.squaredNorm();
}

double RaisingOperator::j_squared(const ComplexVector& psi) const {
  const double M = two_M_ / 2.0;
  const RealVector re = psi.real();
  const RealVector im = psi.imag();
  return (jplus_ * re).squaredNorm() + (jplus_ * im).squaredNorm() +
         M * (M + 1.0) * psi.squaredNorm();
}

RealVector RaisingOperator::apply_j_squared(const RealVector& psi) const {
  const double M = two_M_ / 2.0;
  const RealVector up = jplus_ * psi;
  return RealVector(jplus_.transpose() * up) + M * (M + 1.0) * psi;
}

double j_squared_expectation(const ComplexVector& psi, const ManyBodyBasis& basis) {
  return RaisingOperator(basis).j_squared(psi);
}

}  // namespace nsmqa
