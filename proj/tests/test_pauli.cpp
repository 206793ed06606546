#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "vqs/pauli.hpp"

using namespace vqs;

namespace {
const cplx kI(0.0, 1.0);
}

TEST_CASE("terms stay canonical: sorted, merged, pruned") {
  PauliSum p(2);
  p.add(1.0, "ZI");
  p.add(0.5, "XX");
  p.add(2.0, "ZI");
  p.add(-0.5, "XX");
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].ops == "ZI");
  CHECK(p.terms()[0].coeff.real() == doctest::Approx(3.0));
}

TEST_CASE("single-string matrices follow the qubit-0-most-significant layout") {
  const Mat zi = pauli_string_matrix("ZI");
  const Mat iz = pauli_string_matrix("IZ");
  CHECK(zi.diagonal().real().isApprox(Eigen::Vector4d(1, 1, -1, -1)));
  CHECK(iz.diagonal().real().isApprox(Eigen::Vector4d(1, -1, 1, -1)));
  const Mat xi = pauli_string_matrix("XI");
  CHECK(std::abs(xi(0, 2) - 1.0) < 1e-15);  // X on qubit 0 flips the high bit
}

TEST_CASE("products multiply strings with the right phases") {
  PauliSum x(1), y(1);
  x.add(1.0, "X");
  y.add(1.0, "Y");
  const PauliSum xy = x * y;  // XY = iZ
  REQUIRE(xy.terms().size() == 1);
  CHECK(xy.terms()[0].ops == "Z");
  CHECK(std::abs(xy.terms()[0].coeff - kI) < 1e-15);

  PauliSum xx(2), yy(2);
  xx.add(1.0, "XX");
  yy.add(1.0, "YY");
  const PauliSum prod = xx * yy;  // (XY)(XY) = (iZ)(iZ) = -ZZ
  REQUIRE(prod.terms().size() == 1);
  CHECK(prod.terms()[0].ops == "ZZ");
  CHECK(prod.terms()[0].coeff.real() == doctest::Approx(-1.0));
}

TEST_CASE("product matches the dense matrix product") {
  const PauliSum h = heisenberg_chain(3, 1.0);
  const PauliSum s2 = s_tot2_op(3);
  const Mat lhs = to_matrix(h * s2);
  const Mat rhs = to_matrix(h) * to_matrix(s2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("chain Hamiltonians have the advertised term counts") {
  CHECK(heisenberg_chain(4, 1.0).terms().size() == 9);
  CHECK(heisenberg_chain(8, 1.0).terms().size() == 21);
  CHECK(transverse_ising_chain(4, 1.0, 1.0).terms().size() == 7);
  CHECK(transverse_ising_chain(8, 1.0, 1.0).terms().size() == 15);
  CHECK(heisenberg_chain(2, 1.0).is_hermitian());
  CHECK(transverse_ising_chain(2, 1.0, 1.0).is_hermitian());
}

TEST_CASE("two-site couplings reproduce textbook spectra") {
  Eigen::SelfAdjointEigenSolver<Mat> heis(to_matrix(heisenberg_chain(2, 1.0)));
  RVec ev = heis.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-3.0));
  CHECK(ev(1) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));

  Eigen::SelfAdjointEigenSolver<Mat> ising(to_matrix(transverse_ising_chain(2, 1.0, 1.0)));
  ev = ising.eigenvalues();
  const double r5 = std::sqrt(5.0);
  CHECK(ev(0) == doctest::Approx(-r5).epsilon(1e-9));
  CHECK(ev(1) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(ev(2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ev(3) == doctest::Approx(r5).epsilon(1e-9));
}

TEST_CASE("collective spin operators act as expected on basis states") {
  const Mat sz = to_matrix(s_z_op(2));
  CHECK(sz.diagonal().real().isApprox(Eigen::Vector4d(1, 0, 0, -1)));

  // S_tot^2 on two spins: eigenvalues 0 (singlet) and 2 (triplet).
  Eigen::SelfAdjointEigenSolver<Mat> es(to_matrix(s_tot2_op(2)));
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(2.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(2.0));

  // S_tot^2 commutes with the Heisenberg chain.
  const Mat h = to_matrix(heisenberg_chain(4, 1.0));
  const Mat s2 = to_matrix(s_tot2_op(4));
  CHECK((h * s2 - s2 * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("z parity is the sign of the excitation count") {
  const Mat pz = to_matrix(parity_z_op(3));
  for (long idx = 0; idx < 8; ++idx) {
    const int ones = __builtin_popcountll(static_cast<unsigned long long>(idx));
    CHECK(pz(idx, idx).real() == doctest::Approx(ones % 2 == 0 ? 1.0 : -1.0));
  }
}

TEST_CASE("mirror reverses the qubit labels") {
  CHECK(mirror_index(0b01, 2) == 0b10);
  CHECK(mirror_index(0b100, 3) == 0b001);
  CHECK(mirror_index(0b110, 3) == 0b011);
  const Mat m = mirror_matrix(3);
  CHECK((m * m - Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-15);

  const Mat h = to_matrix(heisenberg_chain(4, 1.0));
  const Mat m4 = mirror_matrix(4);
  CHECK((m4 * h * m4 - h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hermiticity check sees complex coefficients") {
  PauliSum p(1);
  p.add(cplx(0.0, 1.0), "X");
  CHECK_FALSE(p.is_hermitian());
  p.add(cplx(0.0, -1.0), "X");  // cancels to nothing
  CHECK(p.is_hermitian());
}

TEST_CASE("scaling and addition stay linear in the dense picture") {
  const PauliSum h = transverse_ising_chain(3, 0.7, 1.3);
  const PauliSum g = heisenberg_chain(3, -0.4);
  const Mat lhs = to_matrix(h.scaled(2.5) + g);
  const Mat rhs = 2.5 * to_matrix(h) + to_matrix(g);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}
