#pragma once

#include <cstdint>

#include "vqs/circuit.hpp"
#include "vqs/spectrum.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Which operator the parameterized circuit must commute with.
enum class Symmetry {
  total_spin,       // Heisenberg blocks only; conserves S_tot^2 and S_z
  z_magnetization,  // Heisenberg blocks plus an Rz layer; conserves S_z
  z_parity,         // Ising blocks plus an Rz layer; conserves the Z parity
};

// Layered two-qubit-block ansatz. Each layer places entangling blocks on the
// odd bonds (0,1),(2,3),... then the even bonds (1,2),(3,4),..., then a
// single-qubit Rz layer for the symmetry classes that allow one. The mirror
// flag ties parameters across the chain midpoint; the sign fields choose
// between plain ties (+1) and sign-flipped ties (-1) for the two-qubit blocks
// and the Rz layer independently. Self-mirrored positions always keep a free
// parameter.
struct AnsatzSpec {
  Model model = Model::heisenberg;
  Symmetry symmetry = Symmetry::total_spin;
  int n_qubits = 0;
  int layers = 1;
  bool mirror = true;
  int block_mirror_sign = 1;
  int rz_mirror_sign = 1;
};

struct ParamLayout {
  int n_params = 0;
  int params_per_layer = 0;
  int blocks_per_layer = 0;   // two-qubit blocks
  int cnots_per_cycle = 0;    // CNOT count of the full decomposed circuit
};

void validate(const AnsatzSpec& spec);

// The parameterized circuit (NH/NI blocks kept whole) and its bookkeeping.
std::pair<Circuit, ParamLayout> build_ansatz(const AnsatzSpec& spec);

// Max over `draws` random parameter vectors of the elementwise commutator
// norm ||[U(theta), op]||_max, computed densely.
double verify_symmetry(const Circuit& circuit, const Mat& op, int draws, std::uint64_t seed);

}  // namespace vqs
