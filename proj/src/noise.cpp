#include "vqs/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace vqs {
namespace {

long stride_of(int qubit, int n_qubits) { return 1L << (n_qubits - 1 - qubit); }

}  // namespace

ReadoutModel ReadoutModel::uniform(int n_qubits, double p01, double p10) {
  Eigen::Matrix2d m;
  m << 1.0 - p01, p01, p10, 1.0 - p10;
  ReadoutModel r;
  r.confusion.assign(static_cast<size_t>(n_qubits), m);
  return r;
}

void depolarize_1q(Mat& rho, int qubit, int n_qubits, double p) {
  const double lam = 4.0 * p / 3.0;
  if (lam == 0.0) return;
  const long dim = dim_of(n_qubits);
  const long s = stride_of(qubit, n_qubits);
  for (long i = 0; i < dim; ++i) {
    if (i & s) continue;
    for (long j = 0; j < dim; ++j) {
      if (j & s) continue;
      const cplx d0 = rho(i, j);
      const cplx d1 = rho(i + s, j + s);
      const cplx mix = 0.5 * lam * (d0 + d1);
      rho(i, j) = (1.0 - lam) * d0 + mix;
      rho(i + s, j + s) = (1.0 - lam) * d1 + mix;
      rho(i, j + s) *= 1.0 - lam;
      rho(i + s, j) *= 1.0 - lam;
    }
  }
}

void depolarize_2q(Mat& rho, int q0, int q1, int n_qubits, double p) {
  const double lam = 16.0 * p / 15.0;
  if (lam == 0.0) return;
  const long dim = dim_of(n_qubits);
  const long sa = stride_of(q0, n_qubits);
  const long sb = stride_of(q1, n_qubits);
  const long mask = sa | sb;
  const auto offset = [&](int b) {
    return ((b & 2) ? sa : 0) + ((b & 1) ? sb : 0);
  };
  for (long i = 0; i < dim; ++i) {
    if (i & mask) continue;
    for (long j = 0; j < dim; ++j) {
      if (j & mask) continue;
      cplx tr = 0.0;
      for (int b = 0; b < 4; ++b) tr += rho(i + offset(b), j + offset(b));
      const cplx mix = 0.25 * lam * tr;
      for (int bi = 0; bi < 4; ++bi)
        for (int bj = 0; bj < 4; ++bj) {
          cplx& e = rho(i + offset(bi), j + offset(bj));
          e *= 1.0 - lam;
          if (bi == bj) e += mix;
        }
    }
  }
}

QuantumState apply_circuit_noisy(const QuantumState& in, const Circuit& circuit,
                                 const RVec& theta, const NoiseModel& model) {
  QuantumState state = in;
  state.to_mixed();
  const Circuit phys = decomposed(circuit);
  for (const GateOp& op : phys.ops) {
    if (op.kind == GateKind::Identity) continue;
    apply_gate(state, op, op.param.value(theta));
    if (op.is_two_qubit())
      depolarize_2q(state.rho, op.q0, op.q1, state.n_qubits, model.p2);
    else
      depolarize_1q(state.rho, op.q0, state.n_qubits, model.p1);
  }
  return state;
}

MeasurementHistogram sample_with_readout(const QuantumState& state, long shots,
                                         Rng& rng, const ReadoutModel& readout) {
  MeasurementHistogram hist = sample(state, shots, rng);
  if (readout.ideal()) return hist;
  if (static_cast<int>(readout.confusion.size()) != state.n_qubits)
    throw std::invalid_argument("readout model size does not match qubit count");
  MeasurementHistogram noisy;
  noisy.n_qubits = hist.n_qubits;
  noisy.shots = hist.shots;
  for (const auto& [bits, count] : hist.counts) {
    for (long c = 0; c < count; ++c) {
      std::string reported = bits;
      for (int q = 0; q < state.n_qubits; ++q) {
        const int b = reported[static_cast<size_t>(q)] - '0';
        const double flip = readout.confusion[static_cast<size_t>(q)](b, 1 - b);
        if (rng.uniform() < flip) reported[static_cast<size_t>(q)] = static_cast<char>('0' + (1 - b));
      }
      ++noisy.counts[reported];
    }
  }
  return noisy;
}

RVec readout_correct(const MeasurementHistogram& hist, const ReadoutModel& readout) {
  const int n = hist.n_qubits;
  const long dim = dim_of(n);
  RVec probs = RVec::Zero(dim);
  if (hist.shots <= 0) return probs;
  long total = 0;
  for (const auto& [bits, count] : hist.counts) {
    long idx = 0;
    for (char c : bits) idx = (idx << 1) | (c == '1' ? 1 : 0);
    probs(idx) += static_cast<double>(count);
    total += count;
  }
  if (total == 0) return probs;
  probs /= static_cast<double>(total);
  if (readout.ideal()) return probs;
  if (static_cast<int>(readout.confusion.size()) != n)
    throw std::invalid_argument("readout model size does not match qubit count");
  // Observed distribution is q(y) = sum_x p(x) prod_q A_q(x_q, y_q); undo it
  // one qubit axis at a time with A_q^{-1}.
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2d inv = readout.confusion[static_cast<size_t>(q)].inverse();
    const long s = stride_of(q, n);
    for (long base = 0; base < dim; ++base) {
      if (base & s) continue;
      const double y0 = probs(base);
      const double y1 = probs(base + s);
      // p(x) column update: x runs over rows of A^{-T} acting on (y0, y1).
      probs(base) = inv(0, 0) * y0 + inv(1, 0) * y1;
      probs(base + s) = inv(0, 1) * y0 + inv(1, 1) * y1;
    }
  }
  for (long i = 0; i < dim; ++i) probs(i) = std::max(probs(i), 0.0);
  const double norm = probs.sum();
  if (norm > 0) probs /= norm;
  return probs;
}

}  // namespace vqs
