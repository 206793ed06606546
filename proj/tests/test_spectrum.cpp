#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vqs/pauli.hpp"
#include "vqs/spectrum.hpp"

using namespace vqs;

namespace {

bool multiset_close(RVec got, std::vector<double> want, double tol) {
  if (got.size() != static_cast<long>(want.size())) return false;
  std::vector<double> g(got.data(), got.data() + got.size());
  std::sort(g.begin(), g.end());
  std::sort(want.begin(), want.end());
  for (size_t i = 0; i < want.size(); ++i)
    if (std::abs(g[i] - want[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("four-site Heisenberg spectrum lands on the closed-form multiset") {
  const Spectrum s = exact_spectrum(heisenberg_chain(4, 1.0));
  CHECK(multiset_close(s.energies,
                       {-6.464, -3.828, -3.828, -3.828, -1, -1, -1, 0.464,
                        1.828, 1.828, 1.828, 3, 3, 3, 3, 3},
                       1e-3));
  // eigenvector columns actually diagonalize H
  const Mat h = to_matrix(heisenberg_chain(4, 1.0));
  for (long i = 0; i < s.energies.size(); ++i) {
    const Vec v = s.vectors.col(i);
    CHECK((h * v - s.energies(i) * v).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eight-site chains reproduce the reference low-lying levels") {
  const Spectrum heis = exact_spectrum(heisenberg_chain(8, 1.0));
  CHECK(std::abs(heis.energies(0) - -13.4997) < 1e-3);
  CHECK(std::abs(heis.energies(1) - -11.9289) < 1e-3);
  CHECK(std::abs(heis.energies(3) - -11.9289) < 1e-3);  // triplet degeneracy
  CHECK(std::abs(heis.energies(4) - -10.0149) < 1e-3);

  const Spectrum ising8 = exact_spectrum(transverse_ising_chain(8, 1.0, 1.0));
  CHECK(std::abs(ising8.energies(0) - -9.838) < 1e-3);
  CHECK(std::abs(ising8.energies(1) - -9.4689) < 1e-3);
  CHECK(std::abs(ising8.energies(2) - -8.7432) < 1e-3);
}

TEST_CASE("four-site Ising lowest three") {
  const Spectrum s = exact_spectrum(transverse_ising_chain(4, 1.0, 1.0));
  CHECK(std::abs(s.energies(0) - -4.759) < 1e-3);
  CHECK(std::abs(s.energies(1) - -4.064) < 1e-3);
  CHECK(std::abs(s.energies(2) - -2.759) < 1e-3);
}

TEST_CASE("energies come out ascending") {
  const Spectrum s = exact_spectrum(heisenberg_chain(6, 1.0));
  for (long i = 1; i < s.energies.size(); ++i) CHECK(s.energies(i) >= s.energies(i - 1));
}

TEST_CASE("labeled Heisenberg levels carry the right symmetry sectors") {
  const auto levels = labeled_spectrum(heisenberg_chain(4, 1.0), Model::heisenberg);
  REQUIRE(levels.size() == 16);

  // ground state: global singlet, mirror even
  CHECK(levels[0].labels.s == doctest::Approx(0.0));
  CHECK(levels[0].labels.s_z == doctest::Approx(0.0));
  CHECK(levels[0].labels.mirror == 1);

  // first triplet: s = 1, s_z covering {-1, 0, +1}, mirror odd
  std::vector<double> szs;
  for (int i = 1; i <= 3; ++i) {
    CHECK(levels[i].labels.s == doctest::Approx(1.0));
    CHECK(levels[i].labels.mirror == -1);
    szs.push_back(levels[i].labels.s_z);
  }
  std::sort(szs.begin(), szs.end());
  CHECK(szs[0] == doctest::Approx(-1.0));
  CHECK(szs[1] == doctest::Approx(0.0));
  CHECK(szs[2] == doctest::Approx(1.0));

  // second singlet sits at index 7
  CHECK(levels[7].labels.s == doctest::Approx(0.0));
  CHECK(levels[7].labels.mirror == 1);
  CHECK(levels[7].energy == doctest::Approx(2.0 * std::sqrt(3.0) - 3.0).epsilon(1e-9));

  // top of the spectrum: the five-fold s = 2 multiplet, all mirror even
  for (int i = 11; i < 16; ++i) {
    CHECK(levels[i].labels.s == doctest::Approx(2.0));
    CHECK(levels[i].labels.mirror == 1);
    CHECK(levels[i].energy == doctest::Approx(3.0).epsilon(1e-9));
  }

  // every labeled vector is still an eigenvector of H
  const Mat h = to_matrix(heisenberg_chain(4, 1.0));
  for (const auto& lv : levels)
    CHECK((h * lv.vector - lv.energy * lv.vector).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("labeled Ising levels carry parity and mirror signs") {
  const auto levels = labeled_spectrum(transverse_ising_chain(4, 1.0, 1.0), Model::ising);
  REQUIRE(levels.size() == 16);
  CHECK(levels[0].labels.parity_z == 1);
  CHECK(levels[0].labels.mirror == 1);
  CHECK(levels[1].labels.parity_z == -1);
  CHECK(levels[1].labels.mirror == -1);
  CHECK(levels[2].labels.parity_z == -1);
  CHECK(levels[2].labels.mirror == 1);
  CHECK(std::isnan(levels[0].labels.s));  // spin labels do not apply
}

TEST_CASE("state labeling works on known eigenstates and rejects others") {
  // (|0101> - |1010>)/sqrt(2): s = 1, s_z = 0, mirror -1
  Vec v = Vec::Zero(16);
  v(0b0101) = 1.0 / std::sqrt(2.0);
  v(0b1010) = -1.0 / std::sqrt(2.0);
  const QuantumNumbers q = quantum_numbers(v, Model::heisenberg);
  CHECK(q.s == doctest::Approx(1.0));
  CHECK(q.s_z == doctest::Approx(0.0));
  CHECK(q.mirror == -1);

  // |0001>: s_z-definite but not an S^2 eigenstate
  Vec bad = Vec::Zero(16);
  bad(1) = 1.0;
  CHECK_THROWS(quantum_numbers(bad, Model::heisenberg));
}
