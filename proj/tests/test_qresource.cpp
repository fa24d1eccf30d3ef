#include <doctest.h>

#include <sstream>

#include "nsmqa/nuclei.hpp"
#include "nsmqa/qresource.hpp"

using namespace nsmqa;

namespace {

std::complex<double> coeff(const PauliSum& p, std::uint64_t x, std::uint64_t z) {
  const auto it = p.terms().find({x, z});
  return it == p.terms().end() ? 0.0 : it->second;
}

double max_abs(const PauliSum& p) {
  double m = 0.0;
  for (const auto& [k, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("number operator is (I - Z)/2") {
  for (int j : {0, 3, 11}) {
    const PauliSum n = PauliSum::creation(j) * PauliSum::annihilation(j);
    const std::uint64_t b = std::uint64_t{1} << j;
    CHECK(std::abs(coeff(n, 0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(coeff(n, 0, b) + 0.5) < 1e-15);
    std::size_t live = 0;
    for (const auto& [k, c] : n.terms()) live += std::abs(c) > 1e-15;
    CHECK(live == 2);
  }
}

TEST_CASE("adjacent hopping is (XX + YY)/2") {
  PauliSum hop = PauliSum::creation(0) * PauliSum::annihilation(1);
  hop += PauliSum::creation(1) * PauliSum::annihilation(0);
  CHECK(std::abs(coeff(hop, 0b11, 0) - 0.5) < 1e-15);
  CHECK(std::abs(coeff(hop, 0b11, 0b11) - 0.5) < 1e-15);
  PauliSum rest = hop;
  rest.add({0b11, 0}, -0.5);
  rest.add({0b11, 0b11}, -0.5);
  CHECK(max_abs(rest) < 1e-15);
}

TEST_CASE("anticommutation of mapped ladder operators") {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      PauliSum ac = PauliSum::annihilation(i) * PauliSum::creation(j);
      ac += PauliSum::creation(j) * PauliSum::annihilation(i);
      if (i == j) ac.add({0, 0}, -1.0);
      CHECK(max_abs(ac) < 1e-15);
    }
}

TEST_CASE("staircase CNOT cost") {
  CHECK(staircase_cnots(0) == 0);
  CHECK(staircase_cnots(1) == 0);
  CHECK(staircase_cnots(2) == 2);
  CHECK(staircase_cnots(6) == 10);
  CHECK(staircase_cnots(12) == 22);
  PauliHamiltonian ph;
  ph.n_qubits = 12;
  ph.terms = {{0, 0, 1.0}, {0, 1, 0.5}, {0b111111, 0, 0.25}};
  CHECK(cnot_count_trotter_step(ph) == 10);
  CHECK(PauliString{0b101, 0b110, 1.0}.weight() == 3);
  CHECK(PauliString{0b101, 0b110, 1.0}.pattern(4) == "XZYI");
}

TEST_CASE("Jordan-Wigner image reproduces the sparse Hamiltonian") {
  for (const char* name : {"Be8", "Be10", "Be12", "C12", "O18", "O20"}) {
    const auto s = load_system(find_nucleus(name));
    const auto ph = jordan_wigner_map(s->interaction(), s->modes());
    CAPTURE(name);
    CHECK(ph.n_qubits == s->modes().size());
    const Eigen::MatrixXd m = restrict_to_basis(ph, s->basis());
    CHECK((m - s->target().to_dense()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("mapped terms are unique and real") {
  const auto modes = enumerate_modes(load_interaction(default_interaction_path(Shell::p)));
  const auto ph = jordan_wigner_map(load_interaction(default_interaction_path(Shell::p)), modes);
  for (std::size_t i = 1; i < ph.terms.size(); ++i) {
    const auto& a = ph.terms[i - 1];
    const auto& b = ph.terms[i];
    CHECK(std::make_pair(a.x, a.z) < std::make_pair(b.x, b.z));
  }
  for (const auto& t : ph.terms) CHECK(std::abs(t.coeff) > 1e-12);
  std::ostringstream out;
  ph.write_table(out);
  CHECK(!out.str().empty());
}

TEST_CASE("sd terms are heavier than p terms") {
  const auto p = load_interaction(default_interaction_path(Shell::p));
  const auto sd = load_interaction(default_interaction_path(Shell::sd));
  const auto cp = cost_report(jordan_wigner_map(p, enumerate_modes(p)), Shell::p);
  const auto csd = cost_report(jordan_wigner_map(sd, enumerate_modes(sd)), Shell::sd);
  CHECK(cp.D == 6);
  CHECK(csd.D == 12);
  CHECK(csd.R > cp.R);
  CHECK(csd.avg_weight > cp.avg_weight);
  CHECK(csd.total_cnot > cp.total_cnot);
}
