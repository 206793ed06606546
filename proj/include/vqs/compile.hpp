#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Alternating cycle structure: one_qubit[0], two_qubit[0], one_qubit[1], ...
// always starting and ending with a single-qubit cycle, so
// one_qubit.size() == two_qubit.size() + 1. Gates inside are bound literals;
// CNOTs arrive lowered to H-CZ-H.
struct LayeredCircuit {
  int n_qubits = 0;
  std::vector<std::vector<std::vector<GateOp>>> one_qubit;  // [cycle][qubit][gate]
  std::vector<std::vector<std::pair<int, int>>> two_qubit;  // [cycle][cz pairs]
};

// Greedy as-soon-as-possible placement. Each qubit tracks the last cycle it
// occupied; single-qubit gates join the current even cycle, CZs move to the
// next odd cycle free on both qubits. CZs sharing a qubit land in distinct
// cycles.
LayeredCircuit layerize(const Circuit& circuit, const RVec& theta);

// Per cycle, per qubit: the cycle's gate product collapsed to one SU(2)
// matrix (determinant normalized away).
std::vector<std::vector<Eigen::Matrix2cd>> squeeze_su2(const LayeredCircuit& layers);

// Angles of U = Rz(phi) Rx(pi/2) Rz(theta) Rx(pi/2) Rz(lambda), exact up to
// global phase for any 2x2 unitary input.
struct ZxzxzAngles {
  double lambda_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};
ZxzxzAngles u3_decompose(const Eigen::Matrix2cd& u);

// Time-stamped pulse program on a 1 ns grid. Every single-qubit cycle emits
// exactly two 30 ns pi/2 pulses per qubit (60 ns per cycle); every two-qubit
// cycle is one 120 ns bipolar CZ per pair. Z rotations live in the software
// phase of later pulses; whatever frame remains at the end is recorded per
// qubit, not emitted.
struct PulseEvent {
  long t = 0;
  int qubit = 0;
  long duration = 30;
  double phase = 0.0;  // pulse(p) = Rz(p) Rx(pi/2) Rz(-p)
};
struct CzPulse {
  long t = 0;
  int q0 = 0;
  int q1 = 0;
  long duration = 120;
};
struct Schedule {
  int n_qubits = 0;
  long total_ns = 0;
  std::vector<PulseEvent> pulses;   // sorted by (t, qubit)
  std::vector<CzPulse> czs;         // sorted by (t, q0)
  std::vector<double> residual_frames;  // per-qubit trailing Rz angle
};

Schedule emit_schedule(const LayeredCircuit& layers);

// Unitary realized by the schedule, residual frames included. Reference
// reconstruction for equivalence checks; small registers only.
Mat schedule_unitary(const Schedule& schedule);

// Full pipeline at bound parameters.
struct CompileResult {
  LayeredCircuit layers;
  std::vector<std::vector<ZxzxzAngles>> angles;  // [cycle][qubit]
  Schedule schedule;
};
CompileResult compile_to_pulses(const Circuit& circuit, const RVec& theta);

// Flat-top hyperbolic-tangent envelope centered at t = 0 with support
// [-tau/2, tau/2]: V(t) = A tanh(4 eps (1/2 - |t|/tau)) / tanh(2 eps).
struct EnvelopeParams {
  double eps = 2.0;
  double tau = 60.0;
};
double tanh_envelope(double t, double amplitude, const EnvelopeParams& params);

// Net-zero CZ flux waveform: two back-to-back envelope halves of opposite
// sign over [0, 2 tau); integrates to zero.
double cz_waveform(double t, double amplitude, const EnvelopeParams& params);

std::string schedule_to_json(const Schedule& schedule, const EnvelopeParams& params);
std::string schedule_to_csv(const Schedule& schedule);

}  // namespace vqs
