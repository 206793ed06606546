#pragma once

#include <map>
#include <string>

#include "vqs/circuit.hpp"
#include "vqs/pauli.hpp"
#include "vqs/rng.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Register state, either a pure statevector or a density matrix. Gates apply
// in place through strided kernels; no full-register unitaries are built.
struct QuantumState {
  enum class Kind { pure, mixed };

  Kind kind = Kind::pure;
  int n_qubits = 0;
  Vec amp;   // pure only
  Mat rho;   // mixed only

  static QuantumState zero(int n_qubits);
  static QuantumState from_amplitudes(Vec amplitudes);      // normalized input
  static QuantumState from_density(Mat rho);                 // Hermitian, trace 1

  // Pure -> density matrix of the same state; no-op when already mixed.
  void to_mixed();
};

void apply_gate(QuantumState& state, const GateOp& op, double angle);
void apply_circuit(QuantumState& state, const Circuit& circuit, const RVec& theta);

// Real expectation value of a Hermitian Pauli sum.
double expectation(const QuantumState& state, const PauliSum& observable);

// Fidelity |<a|b>|^2 between two pure states.
double fidelity(const Vec& a, const Vec& b);

// Largest elementwise deviation after aligning global phase, over pure states
// or unitaries flattened alike.
double phase_aligned_distance(const Mat& a, const Mat& b);

struct MeasurementHistogram {
  int n_qubits = 0;
  long shots = 0;
  std::map<std::string, long> counts;  // "0101"-style keys, qubit 0 leftmost
};

// Computational-basis sampling.
MeasurementHistogram sample(const QuantumState& state, long shots, Rng& rng);

// Map each qubit's measurement axis onto Z: 'X' applies H, 'Y' applies
// S-dagger then H, 'Z' leaves the state alone.
void rotate_to_basis(QuantumState& state, char basis);

// Keep only bitstrings whose (n0 - n1) / 2 equals s_z_target. The shots field
// is preserved; the result may hold no counts, which callers treat as they
// see fit.
MeasurementHistogram postselect_sz(const MeasurementHistogram& histogram, double s_z_target);

}  // namespace vqs
