#include "vqs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace vqs {
namespace {

struct CountedFn {
  const CostFn& f;
  long evals = 0;
  double operator()(const RVec& x) {
    ++evals;
    return f(x);
  }
};

struct Vertex {
  RVec x;
  double fx;
};

double simplex_diameter(const std::vector<Vertex>& simplex) {
  double d = 0.0;
  for (size_t i = 1; i < simplex.size(); ++i)
    d = std::max(d, (simplex[i].x - simplex[0].x).cwiseAbs().maxCoeff());
  return d;
}

void record(OptResult& out, int iteration, const Vertex& best, const char* phase,
            long evals) {
  out.trace.push_back({iteration, best.fx, best.x, phase, evals});
}

// Core simplex loop; iteration numbers and trace records start at
// `iter_base`. Used directly and as the first hybrid phase.
OptResult nelder_mead_core(CountedFn& f, const RVec& x0,
                           const OptimizerConfig& config, int iter_base,
                           int max_iters, OptResult out) {
  const long n = x0.size();
  std::vector<Vertex> simplex;
  simplex.push_back({x0, f(x0)});
  Rng rng(config.seed);
  for (long i = 0; i < n; ++i) {
    RVec x(n);
    for (long j = 0; j < n; ++j) x(j) = rng.uniform(-pi / 2, pi / 2);
    simplex.push_back({x, f(x)});
  }
  auto by_cost = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
  std::sort(simplex.begin(), simplex.end(), by_cost);
  record(out, iter_base, simplex[0], "nm", f.evals);

  bool converged = false;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    if (simplex_diameter(simplex) < config.tol) {
      converged = true;
      break;
    }
    RVec centroid = RVec::Zero(n);
    for (long i = 0; i < n; ++i) centroid += simplex[static_cast<size_t>(i)].x;
    centroid /= static_cast<double>(n);
    Vertex& worst = simplex.back();
    const double f_best = simplex[0].fx;
    const double f_second = simplex[simplex.size() - 2].fx;

    const RVec xr = centroid + config.nm_alpha * (centroid - worst.x);
    const double fr = f(xr);
    if (fr < f_best) {
      const RVec xe = centroid + config.nm_gamma * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr)
        worst = {xe, fe};
      else
        worst = {xr, fr};
    } else if (fr < f_second) {
      worst = {xr, fr};
    } else {
      const bool outside = fr < worst.fx;
      const RVec base = outside ? xr : worst.x;
      const RVec xc = centroid + config.nm_rho * (base - centroid);
      const double fc = f(xc);
      if (fc < (outside ? fr : worst.fx)) {
        worst = {xc, fc};
      } else {
        for (size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = simplex[0].x + config.nm_sigma * (simplex[i].x - simplex[0].x);
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), by_cost);
    record(out, iter_base + iter + 1, simplex[0], "nm", f.evals);
  }

  out.best = simplex[0].x;
  out.best_cost = simplex[0].fx;
  out.total_evals = f.evals;
  out.converged = converged;
  return out;
}

OptResult adam_core(CountedFn& f, const GradFn& grad, const RVec& x0,
                    const OptimizerConfig& config, int iter_base, int max_iters,
                    OptResult out) {
  const long n = x0.size();
  RVec x = x0;
  RVec m = RVec::Zero(n);
  RVec v = RVec::Zero(n);
  double fx = f(x);
  if (out.trace.empty()) record(out, iter_base, {x, fx}, "adam", f.evals);

  out.best = x;
  out.best_cost = fx;
  bool converged = false;
  for (int t = 1; t <= max_iters; ++t) {
    const RVec g = grad(x);
    if (g.cwiseAbs().maxCoeff() < config.tol) {
      converged = true;
      break;
    }
    m = config.adam_beta1 * m + (1 - config.adam_beta1) * g;
    v = config.adam_beta2 * v + (1 - config.adam_beta2) * g.cwiseProduct(g);
    const double bc1 = 1 - std::pow(config.adam_beta1, t);
    const double bc2 = 1 - std::pow(config.adam_beta2, t);
    const RVec mhat = m / bc1;
    const RVec vhat = v / bc2;
    x -= config.adam_alpha *
         (mhat.array() / (vhat.array().sqrt() + config.adam_eps)).matrix();
    fx = f(x);
    record(out, iter_base + t, {x, fx}, "adam", f.evals);
    if (fx < out.best_cost) {
      out.best = x;
      out.best_cost = fx;
    }
  }
  out.total_evals = f.evals;
  out.converged = converged;
  return out;
}

}  // namespace

RVec init_parameters(int n_params, Rng& rng) {
  RVec x(n_params);
  for (int i = 0; i < n_params; ++i) x(i) = rng.uniform(-pi / 2, pi / 2);
  return x;
}

OptResult nelder_mead(const CostFn& f, const RVec& x0, const OptimizerConfig& config) {
  CountedFn counted{f};
  return nelder_mead_core(counted, x0, config, 0, config.max_iters, {});
}

OptResult adam(const CostFn& f, const GradFn& grad, const RVec& x0,
               const OptimizerConfig& config) {
  CountedFn counted{f};
  return adam_core(counted, grad, x0, config, 0, config.max_iters, {});
}

OptResult hybrid_nm_adam(const CostFn& f, const GradFn& grad, const RVec& x0,
                         const OptimizerConfig& config) {
  CountedFn counted{f};
  OptResult nm = nelder_mead_core(counted, x0, config, 0, config.switch_iter, {});
  const int remaining = std::max(0, config.max_iters - config.switch_iter);
  const int resume = nm.trace.empty() ? 0 : nm.trace.back().iteration;
  const RVec start = nm.best;  // copy before nm is moved from
  return adam_core(counted, grad, start, config, resume, remaining, std::move(nm));
}

std::string trace_to_jsonl(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const TraceRecord& r : trace) {
    nlohmann::json j;
    j["iteration"] = r.iteration;
    j["cost"] = r.cost;
    j["phase"] = r.phase;
    j["evals"] = r.evals;
    j["params"] = std::vector<double>(r.params.data(), r.params.data() + r.params.size());
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,cost,phase,evals\n";
  for (const TraceRecord& r : trace)
    out << r.iteration << ',' << r.cost << ',' << r.phase << ',' << r.evals << '\n';
  return out.str();
}

}  // namespace vqs
