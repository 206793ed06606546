#include <cmath>
#include <complex>

#include "doctest.h"
#include "json.hpp"
#include "vqs/compile.hpp"
#include "vqs/rng.hpp"
#include "vqs/state.hpp"

using namespace vqs;

namespace {

const cplx kI(0.0, 1.0);

Eigen::Matrix2cd haar_su2(Rng& rng) {
  // Gaussian-ish fill then QR keeps the distribution irrelevant but valid
  Eigen::Matrix2cd a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
  Eigen::Matrix2cd q = qr.householderQ();
  q /= std::sqrt(q.determinant());
  return q;
}

Eigen::Matrix2cd zxzxz(const ZxzxzAngles& a) {
  auto rz = [](double t) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::exp(-kI * (t / 2));
    m(1, 1) = std::exp(kI * (t / 2));
    return m;
  };
  Eigen::Matrix2cd xh;
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  xh << c, -kI * s, -kI * s, c;
  return rz(a.phi_) * xh * rz(a.theta_) * xh * rz(a.lambda_);
}

Circuit random_circuit(int n_qubits, int n_gates, Rng& rng) {
  Circuit c(n_qubits, 0);
  for (int g = 0; g < n_gates; ++g) {
    const int pick = static_cast<int>(rng.uniform() * 10) % 10;
    const int q0 = static_cast<int>(rng.uniform() * n_qubits) % n_qubits;
    int q1 = (q0 + 1 + static_cast<int>(rng.uniform() * (n_qubits - 1))) % n_qubits;
    const ParamExpr angle = ParamExpr::literal(rng.uniform(-3.0, 3.0));
    switch (pick) {
      case 0: c.add(GateKind::H, q0); break;
      case 1: c.add(GateKind::X, q0); break;
      case 2: c.add(GateKind::Y, q0); break;
      case 3: c.add(GateKind::Z, q0); break;
      case 4: c.add(GateKind::XHalf, q0); break;
      case 5: c.add(GateKind::Rx, q0, angle); break;
      case 6: c.add(GateKind::Ry, q0, angle); break;
      case 7: c.add(GateKind::Rz, q0, angle); break;
      case 8: c.add(GateKind::CNOT, q0, q1); break;
      default: c.add(GateKind::CZ, q0, q1); break;
    }
  }
  return c;
}

void check_layer_invariants(const LayeredCircuit& layers) {
  REQUIRE(layers.one_qubit.size() == layers.two_qubit.size() + 1);
  for (const auto& cycle : layers.one_qubit)
    CHECK(cycle.size() == static_cast<size_t>(layers.n_qubits));
  for (const auto& cycle : layers.two_qubit) {
    std::vector<int> used;
    for (const auto& [a, b] : cycle) {
      CHECK(a < b);
      used.push_back(a);
      used.push_back(b);
    }
    std::sort(used.begin(), used.end());
    CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
  }
}

}  // namespace

TEST_CASE("layerization alternates cycles and splits CZs that share a qubit") {
  Circuit empty(3, 0);
  const LayeredCircuit none = layerize(empty, RVec());
  CHECK(none.one_qubit.size() == 1);
  CHECK(none.two_qubit.empty());

  Circuit chain(3, 0);
  chain.add(GateKind::CZ, 0, 1);
  chain.add(GateKind::CZ, 1, 2);  // shares qubit 1, must move to a later cycle
  const LayeredCircuit layers = layerize(chain, RVec());
  check_layer_invariants(layers);
  REQUIRE(layers.two_qubit.size() == 2);
  CHECK(layers.two_qubit[0] == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(layers.two_qubit[1] == std::vector<std::pair<int, int>>{{1, 2}});

  Circuit par(4, 0);
  par.add(GateKind::CZ, 2, 3);
  par.add(GateKind::CZ, 0, 1);  // disjoint pairs share one cycle, sorted
  const LayeredCircuit both = layerize(par, RVec());
  REQUIRE(both.two_qubit.size() == 1);
  CHECK(both.two_qubit[0] == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
}

TEST_CASE("squeezed cycle matrices are special unitaries") {
  Rng rng(21);
  const Circuit c = random_circuit(3, 18, rng);
  const auto su2s = squeeze_su2(layerize(c, RVec()));
  for (const auto& cycle : su2s)
    for (const auto& u : cycle) {
      CHECK(std::abs(u.determinant() - cplx(1, 0)) < 1e-12);
      CHECK((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("the five-angle decomposition reproduces arbitrary SU(2)s") {
  const ZxzxzAngles id = u3_decompose(Eigen::Matrix2cd::Identity());
  CHECK(id.lambda_ == doctest::Approx(0.0));
  CHECK(id.theta_ == doctest::Approx(M_PI));
  CHECK(id.phi_ == doctest::Approx(-M_PI));
  CHECK(phase_aligned_distance(zxzxz(id), Eigen::Matrix2cd::Identity()) < 1e-12);

  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix2cd u = haar_su2(rng);
    CHECK(phase_aligned_distance(zxzxz(u3_decompose(u)), u) < 1e-11);
  }

  // diagonal and antidiagonal edge cases
  auto diag = Eigen::Matrix2cd::Zero().eval();
  diag(0, 0) = std::exp(-kI * 0.4);
  diag(1, 1) = std::exp(kI * 0.4);
  CHECK(phase_aligned_distance(zxzxz(u3_decompose(diag)), diag) < 1e-12);

  auto anti = Eigen::Matrix2cd::Zero().eval();
  anti(0, 1) = std::exp(kI * 0.9);
  anti(1, 0) = -std::exp(-kI * 0.9);
  CHECK(phase_aligned_distance(zxzxz(u3_decompose(anti)), anti) < 1e-12);
}

TEST_CASE("compiled schedules reconstruct the circuit unitary") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 3) % 3;
    const Circuit c = random_circuit(n, 4 + static_cast<int>(rng.uniform() * 26), rng);
    const CompileResult out = compile_to_pulses(c, RVec());
    check_layer_invariants(out.layers);
    CHECK(phase_aligned_distance(schedule_unitary(out.schedule), circuit_unitary(c, RVec())) < 1e-9);
  }
}

TEST_CASE("every one-qubit cycle costs exactly two pulses per qubit, no exceptions") {
  Rng rng(66);
  const Circuit c = random_circuit(4, 25, rng);
  const CompileResult out = compile_to_pulses(c, RVec());

  const long cycles = static_cast<long>(out.layers.one_qubit.size());
  CHECK(static_cast<long>(out.schedule.pulses.size()) == 2 * 4 * cycles);
  CHECK(out.schedule.total_ns == 60 * cycles + 120 * static_cast<long>(out.layers.two_qubit.size()));

  // pulses arrive in 30 ns pairs at the start of each 1q window
  for (const PulseEvent& p : out.schedule.pulses) CHECK(p.duration == 30);
  for (const CzPulse& cz : out.schedule.czs) CHECK(cz.duration == 120);
}

TEST_CASE("schedules of equal cycle structure differ only in phases") {
  Circuit a(3, 0), b(3, 0);
  a.add(GateKind::Rx, 0, ParamExpr::literal(0.3));
  a.add(GateKind::CZ, 0, 1);
  a.add(GateKind::Ry, 2, ParamExpr::literal(-1.2));
  b.add(GateKind::Rz, 0, ParamExpr::literal(2.1));
  b.add(GateKind::CZ, 0, 1);
  b.add(GateKind::H, 2);

  const Schedule sa = compile_to_pulses(a, RVec()).schedule;
  const Schedule sb = compile_to_pulses(b, RVec()).schedule;
  REQUIRE(sa.pulses.size() == sb.pulses.size());
  for (size_t i = 0; i < sa.pulses.size(); ++i) {
    CHECK(sa.pulses[i].t == sb.pulses[i].t);
    CHECK(sa.pulses[i].qubit == sb.pulses[i].qubit);
    CHECK(sa.pulses[i].duration == sb.pulses[i].duration);
  }
  REQUIRE(sa.czs.size() == sb.czs.size());
  for (size_t i = 0; i < sa.czs.size(); ++i) {
    CHECK(sa.czs[i].t == sb.czs[i].t);
    CHECK(sa.czs[i].q0 == sb.czs[i].q0);
    CHECK(sa.czs[i].q1 == sb.czs[i].q1);
  }
}

TEST_CASE("the flat-top envelope hits its closed-form values") {
  EnvelopeParams params;  // eps = 2, tau = 60
  CHECK(tanh_envelope(0.0, 1.0, params) == doctest::Approx(1.0));
  CHECK(tanh_envelope(15.0, 2.0, params) ==
        doctest::Approx(2.0 * std::tanh(2.0) / std::tanh(4.0)).epsilon(1e-12));
  CHECK(tanh_envelope(30.0, 1.0, params) == doctest::Approx(0.0));
  CHECK(tanh_envelope(31.0, 1.0, params) == 0.0);
  CHECK(tanh_envelope(-31.0, 1.0, params) == 0.0);
  CHECK(tanh_envelope(-12.0, 1.0, params) == doctest::Approx(tanh_envelope(12.0, 1.0, params)));
}

TEST_CASE("the bipolar CZ waveform nets to zero") {
  EnvelopeParams params;
  params.eps = 2.5;
  params.tau = 80.0;

  // second half mirrors the first with opposite sign
  for (double t = 0.0; t < params.tau; t += 0.7)
    CHECK(cz_waveform(t, 1.3, params) == doctest::Approx(-cz_waveform(t + params.tau, 1.3, params)));

  // midpoint integral on an integer-indexed grid (no accumulation drift),
  // paired across the two halves so cancellation is exact
  const double dt = 0.01;
  const long steps = std::lround(params.tau / dt);
  double integral = 0.0;
  for (long i = 0; i < steps; ++i) {
    const double u = (i + 0.5) * dt;
    integral += (cz_waveform(u, 1.3, params) +
                 cz_waveform(u + params.tau, 1.3, params)) *
                dt;
  }
  CHECK(std::abs(integral) < 1e-12);
}

TEST_CASE("schedule serializations are shaped and deterministic") {
  Rng rng(88);
  const Circuit c = random_circuit(3, 12, rng);
  const Schedule s = compile_to_pulses(c, RVec()).schedule;

  const std::string j1 = schedule_to_json(s, EnvelopeParams());
  const std::string j2 = schedule_to_json(s, EnvelopeParams());
  CHECK(j1 == j2);
  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["n_qubits"] == 3);
  CHECK(parsed["pulses"].size() == s.pulses.size());
  CHECK(parsed["cz"].size() == s.czs.size());
  CHECK(parsed["envelope"]["eps"] == 2.0);
  CHECK(parsed["residual_frames"].size() == 3);

  const std::string csv = schedule_to_csv(s);
  size_t lines = 0, pos = 0;
  while ((pos = csv.find('\n', pos)) != std::string::npos) {
    ++lines;
    ++pos;
  }
  CHECK(lines == 1 + s.pulses.size() + s.czs.size());
}
