#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vqs/circuit.hpp"
#include "vqs/noise.hpp"
#include "vqs/pauli.hpp"
#include "vqs/rng.hpp"
#include "vqs/types.hpp"

namespace vqs {

// Optional symmetry penalty added to each state's energy.
//   none:          E_i
//   s_tot2:        E_i + beta <S_tot^2>
//   s_tot2_target: E_i + beta <(S_tot^2 - target)^2>
struct Penalty {
  enum class Kind { none, s_tot2, s_tot2_target };
  Kind kind = Kind::none;
  double beta = 0.0;
  double target = 0.0;

  static Penalty none() { return {}; }
  static Penalty total_spin(double beta) { return {Kind::s_tot2, beta, 0.0}; }
  static Penalty total_spin_target(double beta, double target) {
    return {Kind::s_tot2_target, beta, target};
  }
};

struct Backend {
  enum class Kind { exact, shots, noisy };
  Kind kind = Kind::exact;
  long shots = 0;  // sampling backends; 0 under noisy = exact trace readout
  std::uint64_t seed = 0;
  NoiseModel noise;

  static Backend exact_backend() { return {}; }
  static Backend shots_backend(long n, std::uint64_t seed) {
    Backend b;
    b.kind = Kind::shots;
    b.shots = n;
    b.seed = seed;
    return b;
  }
  static Backend noisy_backend(NoiseModel model, long shots = 0,
                               std::uint64_t seed = 0) {
    Backend b;
    b.kind = Kind::noisy;
    b.noise = std::move(model);
    b.shots = shots;
    b.seed = seed;
    return b;
  }

  bool sampling() const { return kind == Kind::shots || (kind == Kind::noisy && shots > 0); }
};

// Weighted subspace cost C(theta) = sum_i w_i (E_i + penalty_i) over a list of
// orthogonal initial states pushed through one shared ansatz.
struct CostSpec {
  PauliSum hamiltonian{1};
  Circuit ansatz;
  std::vector<Circuit> inits;
  std::vector<double> weights;  // strictly decreasing, one per init
  Penalty penalty;
  Backend backend;
  bool conserves_sz = false;  // enables Z-basis postselection when sampling
  double s_z_target = 0.0;

  mutable std::shared_ptr<Rng> sampler;  // lazily seeded from backend.seed
};

struct CostBreakdown {
  double value = 0.0;
  std::vector<double> energies;        // <H> per state
  std::vector<double> energy_stderr;   // sampling standard error, 0 if exact
  std::vector<double> penalties;       // raw penalty expectation per state
};

void validate(const CostSpec& spec);

CostBreakdown evaluate(const CostSpec& spec, const RVec& theta);
double cost_value(const CostSpec& spec, const RVec& theta);

// Gradient of the total cost. Uses the exact parameter-shift rule on the
// decomposed rotation gates; the squared-target penalty is not shift-exact, so
// that case falls back to central finite differences with step 1e-5.
RVec gradient(const CostSpec& spec, const RVec& theta);

// Greedy qubit-wise grouping: terms sharing, per qubit, either identity or one
// common basis letter are measured together. Returns per-group basis strings
// and the indices of the grouped terms.
struct MeasurementGroup {
  std::string basis;           // one of I/X/Y/Z per qubit; I measures in Z
  std::vector<size_t> terms;
};
std::vector<MeasurementGroup> group_qubitwise(const PauliSum& sum);

}  // namespace vqs
