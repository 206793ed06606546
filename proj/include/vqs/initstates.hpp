#pragma once

#include <array>
#include <string>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/types.hpp"

namespace vqs {

// One initialization: the state preparation circuit (gate set {X, H, Ry, Z,
// CNOT}) and the closed-form target it must produce from |0...0>, phase-fixed
// so the first nonzero amplitude is real positive.
struct InitState {
  std::string label;
  Circuit circuit;
  Vec target;
};

// All labels with a built-in initialization, e.g. "heis4/T1/+1", "ising8/E2".
std::vector<std::string> init_labels();

// The initialization for one state label. Throws on unknown labels.
InitState init_state(const std::string& label);

Circuit init_circuit(const std::string& label);
Vec target_statevector(const std::string& label);

// The ordered list of initial states used when training toward `label`:
// size 1 for plain VQE rows, size 2 for the subspace-search rows
// (heis4/S2 and heis8/T2/0).
std::vector<InitState> experiment_inits(const std::string& label);

// Four-qubit cascade preparing w|1000> + x|0100> + y|0010> + z|0001> with
// (w,x,y,z) = (sin a, cos a sin b, cos a cos b sin c, cos a cos b cos c).
Circuit cascade_circuit(double a, double b, double c);

// Angles reproducing a normalized real single-excitation amplitude vector
// (w,x,y,z) through the cascade.
std::array<double, 3> solve_cascade_angles(const Eigen::Vector4d& amplitudes);

}  // namespace vqs
