#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "nsmqa/nuclei.hpp"
#include "nsmqa/spectra.hpp"

using namespace nsmqa;

namespace {

std::shared_ptr<const NuclearSystem> sys(const char* name) { return load_system(find_nucleus(name)); }

EigenOptions sparse_only() {
  EigenOptions o;
  o.dense_threshold = 0;
  return o;
}

ComplexVector as_complex(const RealVector& v) { return v.cast<std::complex<double>>(); }

}  // namespace

TEST_CASE("block Lanczos agrees with dense diagonalization on Ne20") {
  const auto s = sys("Ne20");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s->target().to_dense(), Eigen::EigenvaluesOnly);
  const auto sp = lowest_eigenpairs(as_operator(s->target()), 10, sparse_only());
  REQUIRE(sp.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(sp.values[i] - es.eigenvalues()[i]) < 1e-9);
  const Eigen::MatrixXd g = sp.vectors.transpose() * sp.vectors;
  CHECK((g - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-9);

  InterpolatedOperator half(s->driver(), s->target(), 0.5);
  const Eigen::MatrixXd dense = 0.5 * s->driver().to_dense() + 0.5 * s->target().to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(dense, Eigen::EigenvaluesOnly);
  const auto sh = lowest_eigenpairs(as_operator(half), 6, sparse_only());
  for (int i = 0; i < 6; ++i) CHECK(std::abs(sh.values[i] - eh.eigenvalues()[i]) < 1e-9);
}

TEST_CASE("residuals are small") {
  const auto s = sys("Ne20");
  const auto sp = lowest_eigenpairs(as_operator(s->target()), 4, sparse_only());
  for (int i = 0; i < 4; ++i) {
    const RealVector v = sp.vectors.col(i);
    CHECK((s->target() * v - sp.values[i] * v).norm() < 1e-7);
  }
}

TEST_CASE("k = 1 on a diagonal operator") {
  RealVector d(600);
  for (int i = 0; i < 600; ++i) d[i] = 3.0 + 0.01 * ((i * 37) % 600);
  d[123] = -4.0;
  const auto h = SparseHamiltonian::diagonal_matrix(d);
  const auto sp = lowest_eigenpairs(as_operator(h), 1);
  CHECK(sp.values[0] == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(std::abs(sp.vectors(123, 0)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Be8 driver: the first nine excited states are degenerate") {
  const auto s = sys("Be8");
  const double E0 = s->reference().E0;
  const auto sp = lowest_eigenpairs(as_operator(s->driver()), 10);
  CHECK(sp.values[0] == doctest::Approx(E0));
  for (int i = 1; i <= 9; ++i) CHECK(std::abs(sp.values[i] - sp.values[1]) < 1e-10);
  CHECK(sp.values[1] - E0 > 1e-3);

  // First excited level: 24 determinants sharing two modes with the reference.
  const auto wide = lowest_eigenpairs(as_operator(s->driver()), 30);
  CHECK(wide.values[1] == doctest::Approx(E0 / 2));
  for (int i = 1; i <= 24; ++i) CHECK(wide.cluster[static_cast<std::size_t>(i)] == 1);
  CHECK(wide.cluster[25] == 25);
  CHECK(wide.values[25] == doctest::Approx(E0 / 4));
}

TEST_CASE("degeneracy clusters") {
  RealVector v(5);
  v << -1.0, -1.0 + 1e-12, 0.0, 0.5, 0.5;
  const auto c = degeneracy_clusters(v, 1e-8);
  CHECK(c == std::vector<int>{0, 0, 2, 3, 3});
}

TEST_CASE("cluster populations are basis independent and sum to one") {
  const auto s = sys("Be8");
  EigenOptions a, b;
  a.seed = 1;
  b.seed = 99;
  a.dense_threshold = b.dense_threshold = 0;
  const auto sa = lowest_eigenpairs(as_operator(s->driver()), 30, a);
  const auto sb = lowest_eigenpairs(as_operator(s->driver()), 30, b);
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(s->dim()));
  psi[0] = {0.6, 0.0};
  psi[1] = {0.0, 0.8};
  const RealVector pa = instantaneous_populations(psi, sa);
  const RealVector pb = instantaneous_populations(psi, sb);
  CHECK((pa.head(25) - pb.head(25)).cwiseAbs().maxCoeff() < 1e-9);
  for (int i = 2; i <= 24; ++i) CHECK(pa[i] == 0.0);

  const auto full = lowest_eigenpairs(as_operator(s->target()), static_cast<int>(s->dim()));
  const RealVector pf = instantaneous_populations(psi, full);
  CHECK(pf.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gap and resonance from synthetic data") {
  std::vector<double> t{0, 1, 2, 3}, lam{0, 1.0 / 3, 2.0 / 3, 1};
  std::vector<RealVector> e, p;
  for (int i = 0; i < 4; ++i) {
    RealVector ei(3), pi(3);
    ei << 0.0, 2.0 - 0.5 * (i == 2), 5.0 - 4.5 * (i == 1);
    pi << 1.0, 1e-8, i == 3 ? 1e-3 : 0.0;
    e.push_back(ei);
    p.push_back(pi);
  }
  const auto g = min_gap_and_resonance(t, lam, e, p);
  REQUIRE(g.r.has_value());
  CHECK(*g.r == 2);
  CHECK(g.delta == doctest::Approx(0.5));
  CHECK(g.t_min == 1.0);
  CHECK(g.lambda_min == doctest::Approx(1.0 / 3));
  CHECK(g.max_populations[2] == doctest::Approx(1e-3));

  for (auto& pi : p) pi[2] = 0.0;
  const auto none = min_gap_and_resonance(t, lam, e, p);
  CHECK_FALSE(none.r.has_value());
  CHECK(none.delta == doctest::Approx(1.5));
}

TEST_CASE("J^2 of single-particle states") {
  const auto modes = enumerate_modes(Shell::sd);
  for (int two_m : {5, 3, -1}) {
    const ManyBodyBasis basis(modes, 1, 0, two_m);
    const int mode = modes.find(0, two_m, Species::neutron);
    REQUIRE(mode >= 0);
    const auto i = basis.index_of(std::uint64_t{1} << mode);
    REQUIRE(i);
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()));
    psi[static_cast<Eigen::Index>(*i)] = 1.0;
    CAPTURE(two_m);
    CHECK(j_squared_expectation(psi, basis) == doctest::Approx(35.0 / 4).epsilon(1e-12));
  }
}

TEST_CASE("even-even ground states have J = 0") {
  for (const char* name : {"Be8", "C12", "O18", "O20", "Ne20"}) {
    const auto s = sys(name);
    const auto sp = lowest_eigenpairs(as_operator(s->target()), 1);
    CAPTURE(name);
    CHECK(std::abs(j_squared_expectation(as_complex(sp.vectors.col(0)), s->basis())) < 1e-8);
  }
}

TEST_CASE("J^2 commutes with H_T") {
  for (const char* name : {"Be8", "O20", "Ne20"}) {
    const auto s = sys(name);
    const RaisingOperator jp(s->basis());
    const Eigen::MatrixXd h = s->target().to_dense();
    Eigen::MatrixXd j2(h.rows(), h.cols());
    for (Eigen::Index c = 0; c < h.cols(); ++c)
      j2.col(c) = jp.apply_j_squared(RealVector::Unit(h.rows(), c));
    CAPTURE(name);
    CHECK((h * j2 - j2 * h).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((j2 - j2.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}
