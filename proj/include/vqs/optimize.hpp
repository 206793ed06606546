#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vqs/rng.hpp"
#include "vqs/types.hpp"

namespace vqs {

using CostFn = std::function<double(const RVec&)>;
using GradFn = std::function<RVec(const RVec&)>;

struct OptimizerConfig {
  int max_iters = 200;
  double tol = 1e-9;          // NM: simplex diameter; Adam: gradient inf-norm
  std::uint64_t seed = 0;     // simplex companion vertices
  int switch_iter = 14;       // hybrid: iterations spent in the simplex phase

  // Simplex moves: reflect, expand, contract, shrink.
  double nm_alpha = 1.0;
  double nm_gamma = 2.0;
  double nm_rho = 0.5;
  double nm_sigma = 0.5;

  // Adam step and moment decay.
  double adam_alpha = 0.1;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct TraceRecord {
  int iteration = 0;
  double cost = 0.0;
  RVec params;
  std::string phase;  // "nm" or "adam"
  long evals = 0;     // cumulative cost evaluations when recorded
};

struct OptResult {
  RVec best;
  double best_cost = 0.0;
  std::vector<TraceRecord> trace;  // one record per iteration, cost non-increasing for NM
  long total_evals = 0;
  bool converged = false;
};

// Uniform i.i.d. draw in [-pi/2, pi/2] per entry.
RVec init_parameters(int n_params, Rng& rng);

// Downhill simplex. Vertex 0 is x0; the other n vertices are i.i.d. uniform
// in [-pi/2, pi/2]^n from the config seed. Stops when the max inf-norm
// distance from the best vertex falls below tol.
OptResult nelder_mead(const CostFn& f, const RVec& x0, const OptimizerConfig& config);

// First-order moments with bias correction. Stops on small gradient inf-norm.
OptResult adam(const CostFn& f, const GradFn& grad, const RVec& x0,
               const OptimizerConfig& config);

// switch_iter simplex iterations, then Adam from the best vertex; the trace
// carries a single phase change and global iteration numbering.
OptResult hybrid_nm_adam(const CostFn& f, const GradFn& grad, const RVec& x0,
                         const OptimizerConfig& config);

// One JSON object per line: iteration, cost, phase, evals, params.
std::string trace_to_jsonl(const std::vector<TraceRecord>& trace);
std::string trace_to_csv(const std::vector<TraceRecord>& trace);

}  // namespace vqs
