#include "vqs/cost.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace vqs {
namespace {

bool is_identity_string(const std::string& ops) {
  return ops.find_first_not_of('I') == std::string::npos;
}

std::optional<PauliSum> penalty_operator(const Penalty& penalty, int n_qubits) {
  switch (penalty.kind) {
    case Penalty::Kind::none:
      return std::nullopt;
    case Penalty::Kind::s_tot2:
      return s_tot2_op(n_qubits);
    case Penalty::Kind::s_tot2_target: {
      PauliSum shifted = s_tot2_op(n_qubits);
      shifted.add(-penalty.target, std::string(static_cast<size_t>(n_qubits), 'I'));
      return shifted * shifted;
    }
  }
  return std::nullopt;
}

void rotate_for_basis(QuantumState& state, const std::string& basis) {
  for (int q = 0; q < state.n_qubits; ++q) {
    const char b = basis[static_cast<size_t>(q)];
    if (b == 'X') {
      apply_gate(state, GateOp{GateKind::H, q, -1, {}}, 0.0);
    } else if (b == 'Y') {
      apply_gate(state, GateOp{GateKind::Rz, q, -1, ParamExpr::literal(-pi / 2)},
                 -pi / 2);
      apply_gate(state, GateOp{GateKind::H, q, -1, {}}, 0.0);
    }
  }
}

double s_z_of_index(long idx, int n_qubits) {
  int ones = 0;
  for (int q = 0; q < n_qubits; ++q) ones += static_cast<int>(bit_of(idx, q, n_qubits));
  return 0.5 * (n_qubits - 2 * ones);
}

// Expectation estimates for each requested Pauli string from grouped sampling,
// plus the sampling variance of any weighted sum formed later.
struct StringEstimates {
  std::map<std::string, double> value;
  // Per-group probability vector and effective shot count, kept so weighted
  // variance can be formed per observable.
  struct GroupData {
    std::string basis;
    std::vector<size_t> strings;  // indices into `order`
    RVec probs;
    long eff_shots = 0;
  };
  std::vector<std::string> order;
  std::vector<GroupData> groups;
};

double string_value_at(const std::string& ops, long idx, int n_qubits) {
  double v = 1.0;
  for (int q = 0; q < n_qubits; ++q) {
    if (ops[static_cast<size_t>(q)] == 'I') continue;
    v *= bit_of(idx, q, n_qubits) ? -1.0 : 1.0;
  }
  return v;
}

StringEstimates estimate_strings(const CostSpec& spec, const QuantumState& state,
                                 const std::vector<std::string>& strings) {
  StringEstimates est;
  est.order = strings;
  PauliSum probe(state.n_qubits);
  for (const std::string& s : strings) probe.add(1.0, s);
  const auto groups = group_qubitwise(probe);
  const int n = state.n_qubits;
  const long dim = dim_of(n);
  const bool noisy = spec.backend.kind == Backend::Kind::noisy;

  for (const auto& g : groups) {
    QuantumState rotated = state;
    rotate_for_basis(rotated, g.basis);
    MeasurementHistogram hist =
        noisy ? sample_with_readout(rotated, spec.backend.shots, *spec.sampler,
                                    spec.backend.noise.readout)
              : sample(rotated, spec.backend.shots, *spec.sampler);
    RVec probs = readout_correct(
        hist, noisy ? spec.backend.noise.readout : ReadoutModel{});

    double retained = 1.0;
    const bool z_basis = g.basis.find('X') == std::string::npos &&
                         g.basis.find('Y') == std::string::npos;
    if (spec.conserves_sz && z_basis) {
      for (long i = 0; i < dim; ++i)
        if (std::abs(s_z_of_index(i, n) - spec.s_z_target) > 1e-9) probs(i) = 0.0;
      retained = probs.sum();
      if (retained <= 0.0)
        throw std::runtime_error("all shots discarded by s_z postselection");
      probs /= retained;
    }

    StringEstimates::GroupData gd;
    gd.basis = g.basis;
    gd.probs = probs;
    gd.eff_shots = std::max<long>(
        1, std::lround(static_cast<double>(spec.backend.shots) * retained));
    for (size_t t : g.terms) {
      const std::string& ops = probe.terms()[t].ops;
      double v = 0.0;
      for (long i = 0; i < dim; ++i)
        if (probs(i) != 0.0) v += probs(i) * string_value_at(ops, i, n);
      est.value[ops] = v;
      for (size_t k = 0; k < strings.size(); ++k)
        if (strings[k] == ops) gd.strings.push_back(k);
    }
    est.groups.push_back(std::move(gd));
  }
  return est;
}

// Sampling variance of sum_t c_t <s_t> where each group contributes the
// variance of its per-shot aggregate value.
double weighted_variance(const StringEstimates& est, const PauliSum& sum,
                         int n_qubits) {
  std::map<std::string, double> coeff;
  for (const PauliTerm& t : sum.terms())
    if (!is_identity_string(t.ops)) coeff[t.ops] += t.coeff.real();
  double var = 0.0;
  for (const auto& g : est.groups) {
    bool any = false;
    double m1 = 0.0, m2 = 0.0;
    const long dim = g.probs.size();
    for (long i = 0; i < dim; ++i) {
      if (g.probs(i) == 0.0) continue;
      double v = 0.0;
      for (size_t k : g.strings) {
        const auto it = coeff.find(est.order[k]);
        if (it == coeff.end()) continue;
        any = true;
        v += it->second * string_value_at(est.order[k], i, n_qubits);
      }
      m1 += g.probs(i) * v;
      m2 += g.probs(i) * v * v;
    }
    if (any) var += std::max(0.0, m2 - m1 * m1) / static_cast<double>(g.eff_shots);
  }
  return var;
}

double sum_from_estimates(const PauliSum& sum, const StringEstimates& est) {
  double total = 0.0;
  for (const PauliTerm& t : sum.terms()) {
    if (is_identity_string(t.ops))
      total += t.coeff.real();
    else
      total += t.coeff.real() * est.value.at(t.ops);
  }
  return total;
}

std::vector<std::string> distinct_strings(const PauliSum& a,
                                          const std::optional<PauliSum>& b) {
  std::map<std::string, bool> seen;
  std::vector<std::string> out;
  const auto take = [&](const PauliSum& s) {
    for (const PauliTerm& t : s.terms()) {
      if (is_identity_string(t.ops) || seen[t.ops]) continue;
      seen[t.ops] = true;
      out.push_back(t.ops);
    }
  };
  take(a);
  if (b) take(*b);
  return out;
}

CostBreakdown evaluate_impl(const CostSpec& spec, const Circuit& ansatz,
                            const RVec& theta) {
  if (theta.size() != ansatz.n_params)
    throw std::invalid_argument("theta size does not match ansatz parameter count");
  const int n = spec.hamiltonian.n_qubits();
  const auto pen_op = penalty_operator(spec.penalty, n);
  const bool sampling = spec.backend.sampling();
  if (sampling && !spec.sampler)
    spec.sampler = std::make_shared<Rng>(spec.backend.seed);

  CostBreakdown out;
  const RVec no_params;
  for (size_t i = 0; i < spec.inits.size(); ++i) {
    QuantumState state = QuantumState::zero(n);
    if (spec.backend.kind == Backend::Kind::noisy) {
      Circuit full = spec.inits[i];
      full.n_params = ansatz.n_params;
      full.append(ansatz);
      state = apply_circuit_noisy(state, full, theta, spec.backend.noise);
    } else {
      apply_circuit(state, spec.inits[i], no_params);
      apply_circuit(state, ansatz, theta);
    }

    double energy = 0.0, pen = 0.0, err = 0.0;
    if (!sampling) {
      energy = expectation(state, spec.hamiltonian);
      if (pen_op) pen = expectation(state, *pen_op);
    } else {
      const auto strings = distinct_strings(spec.hamiltonian, pen_op);
      const auto est = estimate_strings(spec, state, strings);
      energy = sum_from_estimates(spec.hamiltonian, est);
      if (pen_op) pen = sum_from_estimates(*pen_op, est);
      err = std::sqrt(weighted_variance(est, spec.hamiltonian, n));
    }
    out.energies.push_back(energy);
    out.penalties.push_back(pen);
    out.energy_stderr.push_back(err);
    out.value += spec.weights[i] * (energy + spec.penalty.beta * pen);
  }
  return out;
}

}  // namespace

void validate(const CostSpec& spec) {
  const int n = spec.hamiltonian.n_qubits();
  if (!spec.hamiltonian.is_hermitian())
    throw std::invalid_argument("hamiltonian must be Hermitian");
  if (spec.ansatz.n_qubits != n)
    throw std::invalid_argument("ansatz qubit count does not match hamiltonian");
  validate(spec.ansatz);
  if (spec.inits.empty()) throw std::invalid_argument("need at least one init");
  for (const Circuit& c : spec.inits) {
    if (c.n_qubits != n)
      throw std::invalid_argument("init qubit count does not match hamiltonian");
    validate(c);
  }
  if (spec.weights.size() != spec.inits.size())
    throw std::invalid_argument("one weight per init required");
  for (size_t i = 0; i < spec.weights.size(); ++i) {
    if (spec.weights[i] <= 0)
      throw std::invalid_argument("weights must be positive");
    if (i + 1 < spec.weights.size() && spec.weights[i] <= spec.weights[i + 1])
      throw std::invalid_argument("weights must be strictly decreasing");
  }
  if (spec.penalty.beta < 0) throw std::invalid_argument("penalty beta must be >= 0");
  if (spec.backend.kind == Backend::Kind::shots && spec.backend.shots <= 0)
    throw std::invalid_argument("shots backend needs a positive shot count");
  if (spec.backend.shots < 0)
    throw std::invalid_argument("shot count must be non-negative");
}

CostBreakdown evaluate(const CostSpec& spec, const RVec& theta) {
  validate(spec);
  return evaluate_impl(spec, spec.ansatz, theta);
}

double cost_value(const CostSpec& spec, const RVec& theta) {
  return evaluate(spec, theta).value;
}

RVec gradient(const CostSpec& spec, const RVec& theta) {
  validate(spec);
  if (spec.backend.kind == Backend::Kind::noisy)
    throw std::invalid_argument("gradient requires the exact or shots backend");
  RVec grad = RVec::Zero(theta.size());

  if (spec.penalty.kind == Penalty::Kind::s_tot2_target) {
    const double h = 1e-5;
    for (long j = 0; j < theta.size(); ++j) {
      RVec tp = theta, tm = theta;
      tp(j) += h;
      tm(j) -= h;
      grad(j) = (evaluate_impl(spec, spec.ansatz, tp).value -
                 evaluate_impl(spec, spec.ansatz, tm).value) /
                (2 * h);
    }
    return grad;
  }

  Circuit dec = decomposed(spec.ansatz);
  for (size_t g = 0; g < dec.ops.size(); ++g) {
    const ParamExpr& p = dec.ops[g].param;
    if (!dec.ops[g].is_parametric() || p.is_literal()) continue;
    double plus, minus;
    {
      Circuit shifted = dec;
      shifted.ops[g].param.offset += pi / 2;
      plus = evaluate_impl(spec, shifted, theta).value;
    }
    {
      Circuit shifted = dec;
      shifted.ops[g].param.offset -= pi / 2;
      minus = evaluate_impl(spec, shifted, theta).value;
    }
    grad(p.index) += p.coefficient * (plus - minus) / 2.0;
  }
  return grad;
}

std::vector<MeasurementGroup> group_qubitwise(const PauliSum& sum) {
  std::vector<MeasurementGroup> groups;
  const int n = sum.n_qubits();
  for (size_t t = 0; t < sum.terms().size(); ++t) {
    const std::string& ops = sum.terms()[t].ops;
    bool placed = false;
    for (auto& g : groups) {
      bool ok = true;
      for (int q = 0; q < n && ok; ++q) {
        const char a = g.basis[static_cast<size_t>(q)];
        const char b = ops[static_cast<size_t>(q)];
        ok = (a == 'I' || b == 'I' || a == b);
      }
      if (!ok) continue;
      for (int q = 0; q < n; ++q)
        if (ops[static_cast<size_t>(q)] != 'I')
          g.basis[static_cast<size_t>(q)] = ops[static_cast<size_t>(q)];
      g.terms.push_back(t);
      placed = true;
      break;
    }
    if (!placed) groups.push_back({ops, {t}});
  }
  return groups;
}

}  // namespace vqs
