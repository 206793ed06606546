#include "vqs/zne.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vqs {
namespace {

// SSR of the best (a, b) for a fixed rate, with the solved coefficients.
struct ProfileFit {
  double ssr = 0.0;
  double a = 0.0, b = 0.0;
};

ProfileFit profile_fit(const std::vector<ZnePoint>& pts, double c) {
  // Linear LSQ in (a, b) against basis {1, exp(-c k)}.
  double s11 = 0, s1e = 0, see = 0, s1y = 0, sey = 0;
  for (const ZnePoint& p : pts) {
    const double e = std::exp(-c * p.k);
    s11 += 1;
    s1e += e;
    see += e * e;
    s1y += p.energy;
    sey += e * p.energy;
  }
  const double det = s11 * see - s1e * s1e;
  ProfileFit fit;
  if (std::abs(det) < 1e-14) {
    fit.ssr = std::numeric_limits<double>::infinity();
    return fit;
  }
  fit.a = (see * s1y - s1e * sey) / det;
  fit.b = (s11 * sey - s1e * s1y) / det;
  for (const ZnePoint& p : pts) {
    const double r = p.energy - fit.a - fit.b * std::exp(-c * p.k);
    fit.ssr += r * r;
  }
  return fit;
}

}  // namespace

Circuit fold_ansatz(const Circuit& circuit, int k) {
  if (k < 1) throw std::invalid_argument("fold factor must be >= 1");
  Circuit out(circuit.n_qubits, circuit.n_params);
  for (const GateOp& op : circuit.ops) {
    if (op.kind == GateKind::NH || op.kind == GateKind::NI) {
      const ParamExpr frac = op.param.affine(1.0 / k, 0.0);
      for (int copy = 0; copy < k; ++copy)
        out.add(op.kind, op.q0, op.q1, frac);
    } else if (op.is_two_qubit()) {
      throw std::invalid_argument("non-foldable gate encountered");
    } else {
      out.ops.push_back(op);
    }
  }
  return out;
}

Circuit fold_init(const Circuit& circuit, int k) {
  if (k < 1 || k % 2 == 0)
    throw std::invalid_argument("init folding needs an odd fold factor");
  Circuit out = circuit;
  const Circuit inverse = inverted(circuit);
  for (int r = 0; r < (k - 1) / 2; ++r) {
    out.append(inverse);
    out.append(circuit);
  }
  return out;
}

ZnePoint estimate_at_k(const PauliSum& hamiltonian, const Circuit& init,
                       const Circuit& ansatz, const RVec& theta, int k,
                       const NoiseModel& noise, long shots, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("fold factor must be >= 1");
  const Circuit folded_ansatz = fold_ansatz(ansatz, k);

  const auto run = [&](int init_k, std::uint64_t run_seed) {
    CostSpec spec;
    spec.hamiltonian = hamiltonian;
    spec.ansatz = folded_ansatz;
    spec.inits = {fold_init(init, init_k)};
    spec.weights = {1.0};
    spec.backend = Backend::noisy_backend(noise, shots, run_seed);
    const CostBreakdown b = evaluate(spec, theta);
    return std::pair<double, double>(b.energies[0], b.energy_stderr[0]);
  };

  ZnePoint point;
  point.k = k;
  if (k % 2 == 1) {
    const auto [e, se] = run(k, seed);
    point.energy = e;
    point.stderr_ = se;
  } else {
    const auto [e1, se1] = run(k - 1, seed);
    const auto [e2, se2] = run(k + 1, seed + 1);
    point.energy = 0.5 * (e1 + e2);
    point.stderr_ = 0.5 * std::sqrt(se1 * se1 + se2 * se2);
  }
  return point;
}

ZneResult extrapolate(const std::vector<ZnePoint>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("extrapolation needs at least three points");

  constexpr double kCMin = 1e-3;
  constexpr double kCMax = 5.0;
  double best_c = kCMin;
  double best_ssr = std::numeric_limits<double>::infinity();
  const int grid = 500;
  for (int i = 0; i <= grid; ++i) {
    const double c = kCMin + (kCMax - kCMin) * i / grid;
    const double ssr = profile_fit(points, c).ssr;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best_c = c;
    }
  }
  // Golden-section refinement around the grid winner.
  {
    const double step = (kCMax - kCMin) / grid;
    double lo = std::max(kCMin, best_c - step);
    double hi = std::min(kCMax, best_c + step);
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3;
      const double m2 = hi - (hi - lo) / 3;
      if (profile_fit(points, m1).ssr < profile_fit(points, m2).ssr)
        hi = m2;
      else
        lo = m1;
    }
    best_c = 0.5 * (lo + hi);
  }

  ZneResult result;
  const ProfileFit fit = profile_fit(points, best_c);
  const bool degenerate = !std::isfinite(fit.ssr) || !std::isfinite(fit.a) ||
                          !std::isfinite(fit.b) ||
                          best_c <= kCMin * (1 + 1e-6) ||
                          best_c >= kCMax * (1 - 1e-6);
  if (!degenerate) {
    result.a = fit.a;
    result.b = fit.b;
    result.c = best_c;
    result.e0 = fit.a + fit.b;
    return result;
  }

  // Straight-line fallback a + b k, intercept as the zero-noise estimate.
  double sk = 0, skk = 0, sy = 0, sky = 0, n = 0;
  for (const ZnePoint& p : points) {
    sk += p.k;
    skk += static_cast<double>(p.k) * p.k;
    sy += p.energy;
    sky += p.k * p.energy;
    n += 1;
  }
  const double det = n * skk - sk * sk;
  result.a = (skk * sy - sk * sky) / det;
  result.b = (n * sky - sk * sy) / det;
  result.c = 0.0;
  result.e0 = result.a;
  result.linear_fallback = true;
  return result;
}

}  // namespace vqs
