#include <cmath>
#include <complex>

#include "doctest.h"
#include "vqs/circuit.hpp"
#include "vqs/rng.hpp"
#include "vqs/state.hpp"

using namespace vqs;

namespace {

const cplx kI(0.0, 1.0);

Circuit random_circuit(int n_qubits, int n_params, int n_gates, Rng& rng) {
  Circuit c(n_qubits, n_params);
  for (int g = 0; g < n_gates; ++g) {
    const int pick = static_cast<int>(rng.uniform() * 12) % 12;
    const int q0 = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
    int q1 = (q0 + 1 + static_cast<int>(rng.uniform() * (n_qubits - 1))) % n_qubits;
    const ParamExpr p = n_params > 0 && rng.uniform() < 0.5
                            ? ParamExpr::var(static_cast<int>(rng.uniform() * n_params) % n_params,
                                             2.0 * rng.uniform() - 1.0, rng.uniform())
                            : ParamExpr::literal(6.28 * rng.uniform() - 3.14);
    switch (pick) {
      case 0: c.add(GateKind::H, q0); break;
      case 1: c.add(GateKind::X, q0); break;
      case 2: c.add(GateKind::Y, q0); break;
      case 3: c.add(GateKind::Z, q0); break;
      case 4: c.add(GateKind::XHalf, q0); break;
      case 5: c.add(GateKind::Rx, q0, p); break;
      case 6: c.add(GateKind::Ry, q0, p); break;
      case 7: c.add(GateKind::Rz, q0, p); break;
      case 8: c.add(GateKind::CNOT, q0, q1); break;
      case 9: c.add(GateKind::CZ, q0, q1); break;
      case 10: c.add(GateKind::NH, q0, q1, p); break;
      default: c.add(GateKind::NI, q0, q1, p); break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("rotation conventions are the standard half-angle forms") {
  const double t = 0.731;
  const Mat rz = gate_matrix(GateKind::Rz, t);
  CHECK(std::abs(rz(0, 0) - std::exp(-kI * (t / 2))) < 1e-15);
  CHECK(std::abs(rz(1, 1) - std::exp(kI * (t / 2))) < 1e-15);

  const Mat rx = gate_matrix(GateKind::Rx, t);
  CHECK(std::abs(rx(0, 0) - cplx(std::cos(t / 2), 0)) < 1e-15);
  CHECK(std::abs(rx(0, 1) - (-kI * std::sin(t / 2))) < 1e-15);

  const Mat xh = gate_matrix(GateKind::XHalf, 0.0);
  CHECK((xh - gate_matrix(GateKind::Rx, M_PI / 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("the Heisenberg block has the known eigenstructure") {
  const double t = 0.42;
  const Mat nh = gate_matrix(GateKind::NH, t);

  Vec b00(4), b11(4), psi_p(4), psi_m(4);
  b00 << 1, 0, 0, 0;
  b11 << 0, 0, 0, 1;
  psi_p << 0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  psi_m << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;

  CHECK((nh * b00 - std::exp(kI * t) * b00).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((nh * b11 - std::exp(kI * t) * b11).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((nh * psi_p - std::exp(kI * t) * psi_p).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((nh * psi_m - std::exp(-3.0 * kI * t) * psi_m).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the Ising block equals exp(-i t XX / 2)") {
  const double t = 1.234;
  const Mat ni = gate_matrix(GateKind::NI, t);
  Mat xx(4, 4);
  xx.setZero();
  xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
  const Mat want = std::cos(t / 2) * Mat::Identity(4, 4) - kI * std::sin(t / 2) * xx;
  CHECK((ni - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("block additivity composes angles on a shared pair") {
  Circuit two(2, 2);
  two.add(GateKind::NH, 0, 1, ParamExpr::var(0));
  two.add(GateKind::NH, 0, 1, ParamExpr::var(1));
  Circuit one(2, 2);
  one.add(GateKind::NH, 0, 1, ParamExpr::var(0, 1.0, 0.0));

  RVec t2(2), t1(2);
  t2 << 0.3, -0.8;
  t1 << 0.3 - 0.8, 0.0;
  CHECK(phase_aligned_distance(circuit_unitary(two, t2), circuit_unitary(one, t1)) < 1e-13);
}

TEST_CASE("CNOT templates reproduce the whole blocks exactly") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    RVec theta(1);
    theta << 3.0 * (2.0 * rng.uniform() - 1.0);

    Circuit block(3, 1), tmpl(3, 1);
    block.add(GateKind::NH, 1, 2, ParamExpr::var(0));
    append_nh_template(tmpl, 1, 2, ParamExpr::var(0));
    CHECK(phase_aligned_distance(circuit_unitary(block, theta), circuit_unitary(tmpl, theta)) < 1e-12);

    Circuit iblock(2, 1), itmpl(2, 1);
    iblock.add(GateKind::NI, 0, 1, ParamExpr::var(0));
    append_ni_template(itmpl, 0, 1, ParamExpr::var(0));
    CHECK(phase_aligned_distance(circuit_unitary(iblock, theta), circuit_unitary(itmpl, theta)) < 1e-12);
  }
}

TEST_CASE("decomposition rewrites blocks into counted CNOTs and nothing else") {
  Circuit c(4, 2);
  c.add(GateKind::H, 0);
  c.add(GateKind::NH, 0, 1, ParamExpr::var(0));
  c.add(GateKind::NI, 2, 3, ParamExpr::var(1, -1.0, 0.5));
  c.add(GateKind::CNOT, 1, 2);
  const Circuit d = decomposed(c);
  CHECK(d.n_params == c.n_params);

  int cnots = 0;
  for (const GateOp& op : d.ops) {
    CHECK(op.kind != GateKind::NH);
    CHECK(op.kind != GateKind::NI);
    if (op.kind == GateKind::CNOT) ++cnots;
  }
  CHECK(cnots == 3 + 2 + 1);

  RVec theta(2);
  theta << -0.9, 1.7;
  CHECK(phase_aligned_distance(circuit_unitary(c, theta), circuit_unitary(d, theta)) < 1e-12);
}

TEST_CASE("inversion cancels arbitrary circuits, templates included") {
  Rng rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    const Circuit c = random_circuit(3, 2, 12, rng);
    RVec theta(2);
    theta << 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0;
    const Mat u = circuit_unitary(c, theta);
    const Mat v = circuit_unitary(inverted(c), theta);
    CHECK(phase_aligned_distance(v * u, Mat::Identity(8, 8)) < 1e-11);
  }
}

TEST_CASE("text serialization round-trips bytes and semantics") {
  Rng rng(123);
  const Circuit c = random_circuit(4, 3, 20, rng);
  const std::string text = to_text(c);
  const Circuit back = from_text(text);
  CHECK(to_text(back) == text);
  CHECK(back.n_qubits == c.n_qubits);
  CHECK(back.n_params == c.n_params);
  REQUIRE(back.ops.size() == c.ops.size());

  RVec theta(3);
  theta << 0.2, -1.1, 0.7;
  CHECK(phase_aligned_distance(circuit_unitary(c, theta), circuit_unitary(back, theta)) < 1e-12);
}

TEST_CASE("validation rejects malformed circuits") {
  Circuit c(2, 1);
  c.add(GateKind::H, 0);
  CHECK_NOTHROW(validate(c));

  Circuit bad1(2, 1);
  bad1.ops.push_back({GateKind::H, 5, -1, {}});
  CHECK_THROWS_AS(validate(bad1), std::invalid_argument);

  Circuit bad2(2, 1);
  bad2.ops.push_back({GateKind::CNOT, 1, 1, {}});
  CHECK_THROWS_AS(validate(bad2), std::invalid_argument);

  Circuit bad3(2, 1);
  bad3.ops.push_back({GateKind::Rz, 0, -1, ParamExpr::var(3)});
  CHECK_THROWS_AS(validate(bad3), std::invalid_argument);
}

TEST_CASE("append requires an identical qubit and parameter space") {
  Circuit a(2, 1), b(2, 1), c(3, 1), d(2, 2);
  a.add(GateKind::H, 0);
  b.add(GateKind::X, 1);
  CHECK_NOTHROW(a.append(b));
  CHECK(a.ops.size() == 2);
  CHECK_THROWS_AS(a.append(c), std::invalid_argument);
  CHECK_THROWS_AS(a.append(d), std::invalid_argument);
}

TEST_CASE("parameter expressions compose affinely") {
  RVec theta(3);
  theta << 0.5, -2.0, 1.5;
  const ParamExpr base = ParamExpr::var(1, 3.0, 0.25);
  CHECK(base.value(theta) == doctest::Approx(3.0 * -2.0 + 0.25));
  const ParamExpr mapped = base.affine(0.5, 1.0);
  CHECK(mapped.value(theta) == doctest::Approx(0.5 * (3.0 * -2.0 + 0.25) + 1.0));
  CHECK(ParamExpr::literal(0.7).affine(2.0, 0.1).value(theta) == doctest::Approx(1.5));
}
