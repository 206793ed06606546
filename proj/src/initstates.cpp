#include "vqs/initstates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqs {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

long index_of(const std::string& bits) {
  long idx = 0;
  for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
  return idx;
}

void append_x_on_ones(Circuit& c, const std::string& bits) {
  for (int q = 0; q < static_cast<int>(bits.size()); ++q)
    if (bits[static_cast<size_t>(q)] == '1') c.add(GateKind::X, q);
}

Circuit basis_circuit(const std::string& bits) {
  Circuit c(static_cast<int>(bits.size()), 0);
  append_x_on_ones(c, bits);
  return c;
}

Vec basis_target(const std::string& bits) {
  Vec v = Vec::Zero(dim_of(static_cast<int>(bits.size())));
  v(index_of(bits)) = 1.0;
  return v;
}

// Tensor product of factors listed from qubit 0 downward.
Vec tensor(const std::vector<Vec>& factors) {
  Vec v = Vec::Ones(1);
  for (const Vec& f : factors) {
    Vec next(v.size() * f.size());
    for (long i = 0; i < v.size(); ++i)
      next.segment(i * f.size(), f.size()) = v(i) * f;
    v = next;
  }
  return v;
}

enum class Pair { psi_minus, psi_plus, phi_plus };

Vec pair_vector(Pair p) {
  Vec v = Vec::Zero(4);
  switch (p) {
    case Pair::psi_minus:
      v(1) = kInvSqrt2;
      v(2) = -kInvSqrt2;
      break;
    case Pair::psi_plus:
      v(1) = kInvSqrt2;
      v(2) = kInvSqrt2;
      break;
    case Pair::phi_plus:
      v(0) = kInvSqrt2;
      v(3) = kInvSqrt2;
      break;
  }
  return v;
}

// Bell pair on (a, a+1) out of |00>: one CNOT per pair.
void append_heis_pair(Circuit& c, Pair p, int a) {
  if (p == Pair::psi_minus) {
    c.add(GateKind::X, a);
    c.add(GateKind::X, a + 1);
  } else if (p == Pair::psi_plus) {
    c.add(GateKind::X, a + 1);
  }
  c.add(GateKind::H, a);
  c.add(GateKind::CNOT, a, a + 1);
}

Circuit heis_pairs_circuit(int n, const std::vector<Pair>& pairs) {
  Circuit c(n, 0);
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
    append_heis_pair(c, pairs[static_cast<size_t>(i)], 2 * i);
  return c;
}

Vec heis_pairs_target(const std::vector<Pair>& pairs) {
  std::vector<Vec> factors;
  factors.reserve(pairs.size());
  for (Pair p : pairs) factors.push_back(pair_vector(p));
  return tensor(factors);
}

// Bell pair on the middle-left bond, remaining qubits left in |0>.
Circuit ising_pair_circuit(int n, Pair p) {
  Circuit c(n, 0);
  const int a = n / 2 - 1;
  c.add(GateKind::H, a);
  if (p != Pair::phi_plus) c.add(GateKind::X, a + 1);
  c.add(GateKind::CNOT, a, a + 1);
  if (p == Pair::psi_minus) c.add(GateKind::Z, a);
  return c;
}

Vec ising_pair_target(int n, Pair p) {
  const int a = n / 2 - 1;
  std::vector<Vec> factors;
  if (a > 0) factors.push_back(basis_target(std::string(static_cast<size_t>(a), '0')));
  factors.push_back(pair_vector(p));
  const int rest = n - a - 2;
  if (rest > 0) factors.push_back(basis_target(std::string(static_cast<size_t>(rest), '0')));
  return tensor(factors);
}

// GHZ ladder dressed into one of the s_z = 0 triplet combinations.
Circuit ghz_triplet_circuit(const std::vector<int>& x_qubits) {
  Circuit c(4, 0);
  c.add(GateKind::H, 0);
  c.add(GateKind::CNOT, 0, 1);
  c.add(GateKind::CNOT, 1, 2);
  c.add(GateKind::CNOT, 2, 3);
  c.add(GateKind::Z, 0);
  for (int q : x_qubits) c.add(GateKind::X, q);
  return c;
}

Vec two_term_target(const std::string& plus, const std::string& minus) {
  Vec v = Vec::Zero(16);
  v(index_of(plus)) = kInvSqrt2;
  v(index_of(minus)) = -kInvSqrt2;
  return v;
}

// Amplitudes over the single-excitation strings 0001, 0010, 0100, 1000.
Vec one_hot_target(double a0001, double a0010, double a0100, double a1000) {
  Vec v = Vec::Zero(16);
  v(1) = a0001;
  v(2) = a0010;
  v(4) = a0100;
  v(8) = a1000;
  return v;
}

// Equal-weight cascade angles: all four amplitudes 1/2.
std::array<double, 3> universal_cascade_angles() {
  return {std::asin(0.5), std::asin(1.0 / std::sqrt(3.0)), pi / 4.0};
}

Circuit dressed_cascade(const std::vector<int>& z_qubits, bool x_all) {
  const auto [a, b, c] = universal_cascade_angles();
  Circuit circ = cascade_circuit(a, b, c);
  for (int q : z_qubits) circ.add(GateKind::Z, q);
  if (x_all)
    for (int q = 0; q < 4; ++q) circ.add(GateKind::X, q);
  return circ;
}

Vec phase_fixed(Vec v) {
  for (long i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

InitState make(const std::string& label, Circuit circuit, Vec target) {
  return InitState{label, std::move(circuit), phase_fixed(std::move(target))};
}

InitState build(const std::string& label) {
  const double h = 0.5;
  if (label == "heis4/S1")
    return make(label, heis_pairs_circuit(4, {Pair::psi_minus, Pair::psi_minus}),
                heis_pairs_target({Pair::psi_minus, Pair::psi_minus}));
  if (label == "heis4/S2")
    return make(label, basis_circuit("1010"), basis_target("1010"));
  if (label == "heis4/T1/0")
    return make(label, ghz_triplet_circuit({1, 3}), two_term_target("0101", "1010"));
  if (label == "heis4/T2/0")
    return make(label, ghz_triplet_circuit({1, 2}), two_term_target("0110", "1001"));
  if (label == "heis4/T3/0")
    return make(label, ghz_triplet_circuit({2, 3}), two_term_target("0011", "1100"));
  if (label == "heis4/T1/+1")
    return make(label, dressed_cascade({1, 3}, false), one_hot_target(h, -h, h, -h));
  if (label == "heis4/T2/+1")
    return make(label, dressed_cascade({1, 2}, false), one_hot_target(h, -h, -h, h));
  if (label == "heis4/T3/+1")
    return make(label, dressed_cascade({2, 3}, false), one_hot_target(h, h, -h, -h));
  if (label == "heis4/T1/-1") {
    Vec t = Vec::Zero(16);
    t(7) = h;
    t(11) = -h;
    t(13) = h;
    t(14) = -h;
    return make(label, dressed_cascade({0, 2}, true), std::move(t));
  }
  if (label == "heis4/T2/-1") {
    Vec t = Vec::Zero(16);
    t(7) = h;
    t(11) = -h;
    t(13) = -h;
    t(14) = h;
    return make(label, dressed_cascade({0, 3}, true), std::move(t));
  }
  if (label == "heis4/T3/-1") {
    Vec t = Vec::Zero(16);
    t(7) = h;
    t(11) = h;
    t(13) = -h;
    t(14) = -h;
    return make(label, dressed_cascade({0, 1}, true), std::move(t));
  }
  if (label == "heis4/Q/+2")
    return make(label, basis_circuit("0000"), basis_target("0000"));
  if (label == "heis4/Q/+1")
    return make(label, basis_circuit("0001"), basis_target("0001"));
  if (label == "heis4/Q/0")
    return make(label, basis_circuit("0101"), basis_target("0101"));
  if (label == "heis4/Q/-1")
    return make(label, basis_circuit("0111"), basis_target("0111"));
  if (label == "heis4/Q/-2")
    return make(label, basis_circuit("1111"), basis_target("1111"));
  if (label == "heis8/S1") {
    const std::vector<Pair> p(4, Pair::psi_minus);
    return make(label, heis_pairs_circuit(8, p), heis_pairs_target(p));
  }
  if (label == "heis8/T1/0") {
    const std::vector<Pair> p = {Pair::psi_minus, Pair::psi_plus, Pair::psi_minus,
                                 Pair::psi_minus};
    return make(label, heis_pairs_circuit(8, p), heis_pairs_target(p));
  }
  if (label == "heis8/T2/0") {
    const std::vector<Pair> p = {Pair::psi_minus, Pair::psi_minus, Pair::psi_plus,
                                 Pair::psi_minus};
    return make(label, heis_pairs_circuit(8, p), heis_pairs_target(p));
  }
  const auto ising = [&](int n, Pair p) {
    return make(label, ising_pair_circuit(n, p), ising_pair_target(n, p));
  };
  if (label == "ising4/E1") return ising(4, Pair::phi_plus);
  if (label == "ising4/E2") return ising(4, Pair::psi_minus);
  if (label == "ising4/E3") return ising(4, Pair::psi_plus);
  if (label == "ising8/E1") return ising(8, Pair::phi_plus);
  if (label == "ising8/E2") return ising(8, Pair::psi_minus);
  if (label == "ising8/E3") return ising(8, Pair::psi_plus);
  throw std::invalid_argument("unknown init label: " + label);
}

}  // namespace

std::vector<std::string> init_labels() {
  return {
      "heis4/S1",    "heis4/S2",    "heis4/T1/+1", "heis4/T1/0",  "heis4/T1/-1",
      "heis4/T2/+1", "heis4/T2/0",  "heis4/T2/-1", "heis4/T3/+1", "heis4/T3/0",
      "heis4/T3/-1", "heis4/Q/+2",  "heis4/Q/+1",  "heis4/Q/0",   "heis4/Q/-1",
      "heis4/Q/-2",  "heis8/S1",    "heis8/T1/0",  "heis8/T2/0",  "ising4/E1",
      "ising4/E2",   "ising4/E3",   "ising8/E1",   "ising8/E2",   "ising8/E3",
  };
}

InitState init_state(const std::string& label) { return build(label); }

Circuit init_circuit(const std::string& label) { return build(label).circuit; }

Vec target_statevector(const std::string& label) { return build(label).target; }

std::vector<InitState> experiment_inits(const std::string& label) {
  if (label == "heis4/S2") {
    InitState first = make("heis4/S2/ground-slot", basis_circuit("0101"),
                           basis_target("0101"));
    return {std::move(first), build("heis4/S2")};
  }
  if (label == "heis8/T2/0") return {build("heis8/T1/0"), build("heis8/T2/0")};
  return {build(label)};
}

Circuit cascade_circuit(double a, double b, double c) {
  Circuit circ(4, 0);
  circ.add(GateKind::X, 0);
  circ.add(GateKind::Ry, 1, ParamExpr::literal(a));
  circ.add(GateKind::X, 1);
  circ.add(GateKind::Ry, 1, ParamExpr::literal(-a));
  circ.add(GateKind::CNOT, 1, 0);
  circ.add(GateKind::Ry, 2, ParamExpr::literal(b));
  circ.add(GateKind::CNOT, 1, 2);
  circ.add(GateKind::Ry, 2, ParamExpr::literal(-b));
  circ.add(GateKind::CNOT, 2, 1);
  circ.add(GateKind::Ry, 3, ParamExpr::literal(c));
  circ.add(GateKind::CNOT, 2, 3);
  circ.add(GateKind::Ry, 3, ParamExpr::literal(-c));
  circ.add(GateKind::CNOT, 3, 2);
  return circ;
}

std::array<double, 3> solve_cascade_angles(const Eigen::Vector4d& amplitudes) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    throw std::invalid_argument("cascade amplitudes must be normalized");
  const double w = amplitudes(0);
  const double a = std::asin(std::clamp(w, -1.0, 1.0));
  const double ca = std::cos(a);
  if (ca < 1e-12) return {a, 0.0, 0.0};
  const double b = std::asin(std::clamp(amplitudes(1) / ca, -1.0, 1.0));
  if (std::cos(b) < 1e-12) return {a, b, 0.0};
  const double c = std::atan2(amplitudes(2), amplitudes(3));
  return {a, b, c};
}

}  // namespace vqs
