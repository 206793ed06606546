#pragma once

#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/rng.hpp"
#include "vqs/state.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Per-qubit readout confusion. Row = prepared bit, column = reported bit,
// rows sum to 1. An empty matrix list means ideal readout.
struct ReadoutModel {
  std::vector<Eigen::Matrix2d> confusion;

  bool ideal() const { return confusion.empty(); }
  // Uniform confusion: P(report 1 | prepared 0) = p01, P(report 0 | 1) = p10.
  static ReadoutModel uniform(int n_qubits, double p01, double p10);
};

// Depolarizing strength after every executed gate, by gate arity.
struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.01;
  ReadoutModel readout;
};

// In-place depolarizing channel on a density matrix.
// One qubit:  rho' = (1 - 4p/3) rho + (4p/3) Tr_q(rho) (x) I/2.
// Two qubits: rho' = (1 - 16p/15) rho + (16p/15) Tr_qq'(rho) (x) I/4.
void depolarize_1q(Mat& rho, int qubit, int n_qubits, double p);
void depolarize_2q(Mat& rho, int q0, int q1, int n_qubits, double p);

// Runs the decomposed form of `circuit` on a density matrix, applying the
// depolarizing channel after each gate. Identity placeholders are noiseless.
QuantumState apply_circuit_noisy(const QuantumState& in, const Circuit& circuit,
                                 const RVec& theta, const NoiseModel& model);

// Samples computational-basis shots, flipping each reported bit through the
// confusion matrices.
MeasurementHistogram sample_with_readout(const QuantumState& state, long shots,
                                         Rng& rng, const ReadoutModel& readout);

// Inverts the tensor-product confusion map on empirical frequencies, clips
// negative entries to zero, and renormalizes. Returns a probability vector of
// length 2^n ordered like basis indices.
RVec readout_correct(const MeasurementHistogram& hist, const ReadoutModel& readout);

}  // namespace vqs
