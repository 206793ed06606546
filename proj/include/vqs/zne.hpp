#pragma once

#include <cstdint>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/cost.hpp"
#include "vqs/noise.hpp"
#include "vqs/pauli.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Noise amplification by identity insertion. Every entangling block U(t) is
// replaced by k copies of U(t/k), which multiplies the two-qubit gate count
// by k while leaving the ideal unitary unchanged. Plain single-qubit gates
// pass through once; a bare two-qubit gate has no fractional form and throws.
Circuit fold_ansatz(const Circuit& circuit, int k);

// Initialization folding: C -> C (C^-1 C)^((k-1)/2), odd k only.
Circuit fold_init(const Circuit& circuit, int k);

struct ZnePoint {
  int k = 0;
  double energy = 0.0;
  double stderr_ = 0.0;  // 0 unless sampled
};

// Energy of the folded circuit pair under the depolarizing model at
// amplification k. Odd k folds the init directly; even k averages the two
// neighboring odd init foldings around the same k-folded ansatz.
ZnePoint estimate_at_k(const PauliSum& hamiltonian, const Circuit& init,
                       const Circuit& ansatz, const RVec& theta, int k,
                       const NoiseModel& noise, long shots = 0,
                       std::uint64_t seed = 0);

struct ZneResult {
  double e0 = 0.0;             // extrapolated zero-noise energy
  double a = 0.0, b = 0.0, c = 0.0;  // E(k) = a + b exp(-c k); E(0) = a + b
  bool linear_fallback = false;      // fit degenerated to E(k) = a + b k
};

// Least-squares fit of E(k) = a + b exp(-c k) through at least three points,
// profiling the nonlinear rate: for each candidate c the best (a, b) is the
// closed-form linear solve. Falls back to a straight line, flagged, when the
// rate estimate runs into its bounds.
ZneResult extrapolate(const std::vector<ZnePoint>& points);

}  // namespace vqs
