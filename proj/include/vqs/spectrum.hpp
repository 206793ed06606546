#pragma once

#include <limits>
#include <vector>

#include "vqs/pauli.hpp"
#include "vqs/types.hpp"

namespace vqs {

enum class Model { heisenberg, ising };

// Symmetry labels of a state. Fields that do not apply to the model are left
// at their "unset" values: NaN for the spin labels, 0 for the sign labels.
struct QuantumNumbers {
  double s = std::numeric_limits<double>::quiet_NaN();    // total spin, S^2 = s(s+1)
  double s_z = std::numeric_limits<double>::quiet_NaN();  // collective z projection
  int mirror = 0;                                         // chain-mirror sign, +1/-1
  int parity_z = 0;                                       // global Z parity, +1/-1
};

struct LabeledLevel {
  double energy;
  Vec vector;
  QuantumNumbers labels;
};

// Ascending eigenvalues and matching eigenvectors of a Hermitian Pauli sum.
struct Spectrum {
  RVec energies;
  Mat vectors;  // column i pairs with energies[i]
};

Spectrum exact_spectrum(const PauliSum& hamiltonian);

// Full spectrum with each eigenvector rotated, inside degenerate energy
// blocks, to a simultaneous eigenbasis of the model's symmetries
// (Heisenberg: S^2, S_z, mirror; Ising: Z parity, mirror), then labeled.
std::vector<LabeledLevel> labeled_spectrum(const PauliSum& hamiltonian, Model model);

// Labels of a single state. The state must be an eigenvector of each relevant
// symmetry operator to within `residual_tol`; expectations must land within
// 1e-4 of an allowed eigenvalue or the call throws.
QuantumNumbers quantum_numbers(const Vec& state, Model model, double residual_tol = 1e-6);

}  // namespace vqs
