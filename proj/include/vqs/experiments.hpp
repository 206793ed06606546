#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqs/ansatz.hpp"
#include "vqs/cost.hpp"
#include "vqs/optimize.hpp"
#include "vqs/spectrum.hpp"
#include "vqs/types.hpp"
#include "vqs/zne.hpp"

namespace vqs {

inline constexpr const char* kVersion = "1.0.0";

// One built-in target state: which ansatz, which initializations, which cost,
// which optimizer, plus the published reference numbers used as checks.
struct ExperimentRow {
  std::string label;
  AnsatzSpec ansatz;
  std::vector<double> weights;
  Penalty penalty;
  std::string optimizer;  // "nm", "adam", or "nm+adam"

  int published_params = 0;
  int published_cnots = 0;         // ansatz CNOTs for one round
  int published_folded_cnots = 0;  // total over fold factors 1, 3, 5
  bool bracket_counts_init = true; // the 8-site Ising rows exclude init CNOTs

  double target_energy = 0.0;              // reference <H> of the labeled state
  std::vector<double> target_energies;     // one per trained state
  QuantumNumbers expected;                 // symmetry sector of the labeled state
  std::vector<std::string> manifold;       // siblings evaluated with the same
                                           // trained parameters, when any
  std::string train_label;                 // label whose inits drive training;
                                           // empty means the row's own
};

const std::vector<ExperimentRow>& experiment_table();
const ExperimentRow& experiment(const std::string& label);

int ansatz_cnot_count(const ExperimentRow& row);
int init_cnot_count(const ExperimentRow& row);
// CNOTs actually present after folding the row's circuit pair at k = 1, 3, 5,
// honoring the row's published counting convention for the init part.
int folded_cnot_total(const ExperimentRow& row);

// Effective run settings; JSON config files and CLI flags both land here.
struct RunConfig {
  std::string label;
  std::uint64_t seed = 1;
  int restarts = 1;
  std::string backend = "exact";  // exact | shots | noisy
  long shots = 6000;
  double p1 = 0.001;
  double p2 = 0.01;
  double readout_p01 = 0.0;
  double readout_p10 = 0.0;
  std::string optimizer;  // empty = row default
  int max_iters = 300;
  double tol = 1e-6;
  int switch_iter = 14;
  std::vector<int> zne_ks{1, 2, 3, 4, 5, 6};
  std::vector<double> theta;  // skips training when non-empty
};

// Merge a JSON object's keys onto the defaults. Unknown keys throw.
RunConfig parse_config(const std::string& json_text);
std::string config_canonical_json(const RunConfig& config);
std::uint64_t fnv1a64(const std::string& bytes);
std::string utc_timestamp();

// Assembled cost problem for one table row under the given settings.
CostSpec cost_spec_for(const ExperimentRow& row, const RunConfig& config);

struct StateReport {
  double energy = 0.0;
  double penalty = 0.0;
  double s2 = 0.0;       // <S_tot^2>
  double s_z = 0.0;      // <S_z>
  double mirror = 0.0;   // <M>
  double parity_z = 0.0; // <Z...Z>
};

struct VqeRun {
  RunConfig config;
  const ExperimentRow* row = nullptr;
  OptResult opt;
  CostBreakdown breakdown;
  std::vector<StateReport> states;
  std::vector<std::string> manifold_labels;
  std::vector<double> manifold_energies;
};

VqeRun run_vqe(const RunConfig& config);
std::string vqe_result_json(const VqeRun& run, const std::string& timestamp);

struct ZneRun {
  RunConfig config;
  const ExperimentRow* row = nullptr;
  RVec theta;
  double exact_energy = 0.0;  // noiseless <H> at theta
  std::vector<ZnePoint> points;
  ZneResult fit;
};

ZneRun run_zne(const RunConfig& config);
std::string zne_result_json(const ZneRun& run, const std::string& timestamp);
std::string zne_series_csv(const ZneRun& run);

struct SpectrumRun {
  Model model;
  int n_qubits = 0;
  double J = 1.0;
  double h = 1.0;
  std::vector<LabeledLevel> levels;
};

SpectrumRun run_spectrum(Model model, int n_qubits, double J, double h);
std::string spectrum_json(const SpectrumRun& run, const std::string& timestamp);
std::string spectrum_csv(const SpectrumRun& run);

}  // namespace vqs
