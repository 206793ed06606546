#include "vqs/state.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vqs {

namespace {

int qubits_from_dim(long d) {
  int n = 0;
  while ((1L << n) < d) ++n;
  if ((1L << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

// u2 applied to qubit q of a statevector.
void kernel_1q(Vec& v, int q, const Mat& u2, int n_qubits) {
  const long d = dim_of(n_qubits);
  const long stride = 1L << (n_qubits - 1 - q);
  for (long base = 0; base < d; ++base) {
    if (base & stride) continue;
    const cplx a0 = v[base], a1 = v[base + stride];
    v[base] = u2(0, 0) * a0 + u2(0, 1) * a1;
    v[base + stride] = u2(1, 0) * a0 + u2(1, 1) * a1;
  }
}

// u4 applied to qubits (a, b) of a statevector; a indexes the high bit pair.
void kernel_2q(Vec& v, int a, int b, const Mat& u4, int n_qubits) {
  const long d = dim_of(n_qubits);
  const long sa = 1L << (n_qubits - 1 - a);
  const long sb = 1L << (n_qubits - 1 - b);
  for (long base = 0; base < d; ++base) {
    if ((base & sa) || (base & sb)) continue;
    std::array<cplx, 4> in = {v[base], v[base + sb], v[base + sa], v[base + sa + sb]};
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0;
      for (int c = 0; c < 4; ++c) acc += u4(r, c) * in[c];
      v[base + (r & 2 ? sa : 0) + (r & 1 ? sb : 0)] = acc;
    }
  }
}

// rho -> U rho U^dagger without forming the full-register unitary: run the
// vector kernel over columns, transpose-conjugate, repeat, restore.
template <typename Kernel>
void conjugate_density(Mat& rho, const Kernel& apply_to_vec) {
  for (long c = 0; c < rho.cols(); ++c) {
    Vec col = rho.col(c);
    apply_to_vec(col);
    rho.col(c) = col;
  }
  Mat adj = rho.adjoint();
  for (long c = 0; c < adj.cols(); ++c) {
    Vec col = adj.col(c);
    apply_to_vec(col);
    adj.col(c) = col;
  }
  rho = adj.adjoint();
}

void apply_pauli_string(Vec& v, const std::string& ops, int n_qubits) {
  for (int q = 0; q < n_qubits; ++q) {
    if (ops[q] == 'I') continue;
    GateKind kind = ops[q] == 'X' ? GateKind::X : ops[q] == 'Y' ? GateKind::Y : GateKind::Z;
    kernel_1q(v, q, gate_matrix(kind, 0.0), n_qubits);
  }
}

}  // namespace

QuantumState QuantumState::zero(int n_qubits) {
  QuantumState s;
  s.kind = Kind::pure;
  s.n_qubits = n_qubits;
  s.amp = Vec::Zero(dim_of(n_qubits));
  s.amp[0] = 1.0;
  return s;
}

QuantumState QuantumState::from_amplitudes(Vec amplitudes) {
  QuantumState s;
  s.kind = Kind::pure;
  s.n_qubits = qubits_from_dim(amplitudes.size());
  if (std::abs(amplitudes.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("statevector is not normalized");
  s.amp = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::from_density(Mat rho) {
  QuantumState s;
  s.kind = Kind::mixed;
  s.n_qubits = qubits_from_dim(rho.rows());
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix is not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("density matrix trace is not 1");
  s.rho = std::move(rho);
  return s;
}

void QuantumState::to_mixed() {
  if (kind == Kind::mixed) return;
  rho = amp * amp.adjoint();
  amp.resize(0);
  kind = Kind::mixed;
}

void apply_gate(QuantumState& state, const GateOp& op, double angle) {
  const int n = state.n_qubits;
  const Mat u = gate_matrix(op.kind, angle);
  auto to_vec = [&](Vec& v) {
    if (op.is_two_qubit())
      kernel_2q(v, op.q0, op.q1, u, n);
    else
      kernel_1q(v, op.q0, u, n);
  };
  if (state.kind == QuantumState::Kind::pure)
    to_vec(state.amp);
  else
    conjugate_density(state.rho, to_vec);
}

void apply_circuit(QuantumState& state, const Circuit& circuit, const RVec& theta) {
  if (circuit.n_qubits != state.n_qubits)
    throw std::invalid_argument("apply_circuit: qubit count mismatch");
  for (const auto& op : circuit.ops)
    apply_gate(state, op, op.is_parametric() ? op.param.value(theta) : 0.0);
}

double expectation(const QuantumState& state, const PauliSum& observable) {
  if (observable.n_qubits() != state.n_qubits)
    throw std::invalid_argument("expectation: qubit count mismatch");
  if (!observable.is_hermitian())
    throw std::invalid_argument("expectation: observable is not Hermitian");
  double acc = 0;
  for (const auto& term : observable.terms()) {
    if (state.kind == QuantumState::Kind::pure) {
      Vec w = state.amp;
      apply_pauli_string(w, term.ops, state.n_qubits);
      acc += std::real(term.coeff * state.amp.dot(w));
    } else {
      Mat m = state.rho;
      for (long c = 0; c < m.cols(); ++c) {
        Vec col = m.col(c);
        apply_pauli_string(col, term.ops, state.n_qubits);
        m.col(c) = col;
      }
      acc += std::real(term.coeff * m.trace());
    }
  }
  return acc;
}

double fidelity(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

double phase_aligned_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("phase_aligned_distance: shape mismatch");
  // Align by the phase of the largest-magnitude entry of a.
  long r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(a(r, c)) < 1e-300 || std::abs(b(r, c)) < 1e-300)
    return (a - b).cwiseAbs().maxCoeff();
  const cplx phase = (b(r, c) / std::abs(b(r, c))) / (a(r, c) / std::abs(a(r, c)));
  return (a * phase - b).cwiseAbs().maxCoeff();
}

MeasurementHistogram sample(const QuantumState& state, long shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample: need at least one shot");
  const long d = dim_of(state.n_qubits);
  RVec probs(d);
  if (state.kind == QuantumState::Kind::pure)
    probs = state.amp.cwiseAbs2();
  else
    probs = state.rho.diagonal().real().cwiseMax(0.0);
  RVec cum(d);
  double acc = 0;
  for (long i = 0; i < d; ++i) cum[i] = (acc += probs[i]);

  MeasurementHistogram hist;
  hist.n_qubits = state.n_qubits;
  hist.shots = shots;
  for (long s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    long lo = 0, hi = d - 1;
    while (lo < hi) {
      const long mid = (lo + hi) / 2;
      if (cum[mid] > u)
        hi = mid;
      else
        lo = mid + 1;
    }
    std::string key(state.n_qubits, '0');
    for (int q = 0; q < state.n_qubits; ++q)
      if (bit_of(lo, q, state.n_qubits)) key[q] = '1';
    ++hist.counts[key];
  }
  return hist;
}

void rotate_to_basis(QuantumState& state, char basis) {
  if (basis == 'Z') return;
  if (basis != 'X' && basis != 'Y')
    throw std::invalid_argument("rotate_to_basis: basis must be X, Y, or Z");
  for (int q = 0; q < state.n_qubits; ++q) {
    if (basis == 'Y') apply_gate(state, {GateKind::Rz, q, -1, {}}, -pi / 2);
    apply_gate(state, {GateKind::H, q, -1, {}}, 0.0);
  }
}

MeasurementHistogram postselect_sz(const MeasurementHistogram& histogram, double s_z_target) {
  // The shots field is kept so the retention ratio stays observable. An empty
  // result is legal here; callers decide whether that is an error.
  MeasurementHistogram out;
  out.n_qubits = histogram.n_qubits;
  out.shots = histogram.shots;
  const long twice_target = std::lround(2.0 * s_z_target);
  for (const auto& [key, count] : histogram.counts) {
    long n0 = 0;
    for (char c : key) n0 += (c == '0') ? 1 : -1;
    if (n0 == twice_target) out.counts[key] = count;
  }
  return out;
}

}  // namespace vqs
