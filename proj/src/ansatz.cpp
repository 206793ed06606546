#include "vqs/ansatz.hpp"

#include <stdexcept>
#include <utility>

#include "vqs/rng.hpp"

namespace vqs {

namespace {

struct Bond {
  int a, b;
};

// Odd bonds first, then even bonds, matching the brick pattern.
std::vector<Bond> bond_order(int n) {
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < n; i += 2) bonds.push_back({i, i + 1});
  for (int i = 1; i + 1 < n; i += 2) bonds.push_back({i, i + 1});
  return bonds;
}

// Assign one ParamExpr per position with mirror tying. `partner_of[i]` gives
// the mirror image of position i (may be i itself). Walk order decides which
// member of a pair owns the fresh parameter; the partner reuses it scaled by
// `sign`. Self-mirrored positions always own a fresh parameter.
std::vector<ParamExpr> tie_params(const std::vector<int>& partner_of, bool mirror, int sign,
                                  int& next_param) {
  const int count = static_cast<int>(partner_of.size());
  std::vector<ParamExpr> out(count);
  std::vector<bool> assigned(count, false);
  for (int i = 0; i < count; ++i) {
    if (assigned[i]) continue;
    out[i] = ParamExpr::var(next_param++);
    assigned[i] = true;
    const int j = partner_of[i];
    if (mirror && j != i && !assigned[j]) {
      out[j] = ParamExpr::var(out[i].index, static_cast<double>(sign));
      assigned[j] = true;
    }
  }
  return out;
}

}  // namespace

void validate(const AnsatzSpec& spec) {
  if (spec.n_qubits < 2) throw std::invalid_argument("ansatz needs at least 2 qubits");
  if (spec.layers < 1) throw std::invalid_argument("ansatz needs at least 1 layer");
  if (spec.block_mirror_sign != 1 && spec.block_mirror_sign != -1)
    throw std::invalid_argument("block mirror sign must be +1 or -1");
  if (spec.rz_mirror_sign != 1 && spec.rz_mirror_sign != -1)
    throw std::invalid_argument("rz mirror sign must be +1 or -1");
  const bool ising = spec.model == Model::ising;
  if (ising != (spec.symmetry == Symmetry::z_parity))
    throw std::invalid_argument("symmetry class does not match the model");
}

std::pair<Circuit, ParamLayout> build_ansatz(const AnsatzSpec& spec) {
  validate(spec);
  const int n = spec.n_qubits;
  const auto bonds = bond_order(n);
  const bool has_rz = spec.symmetry != Symmetry::total_spin;
  const GateKind block = spec.model == Model::heisenberg ? GateKind::NH : GateKind::NI;

  // Mirror partners: bond (a,b) <-> (n-1-b, n-1-a); qubit q <-> n-1-q.
  std::vector<int> bond_partner(bonds.size());
  for (std::size_t i = 0; i < bonds.size(); ++i) {
    for (std::size_t j = 0; j < bonds.size(); ++j) {
      if (bonds[j].a == n - 1 - bonds[i].b && bonds[j].b == n - 1 - bonds[i].a)
        bond_partner[i] = static_cast<int>(j);
    }
  }
  std::vector<int> qubit_partner(n);
  for (int q = 0; q < n; ++q) qubit_partner[q] = n - 1 - q;

  Circuit circuit(n, 0);
  int next_param = 0;
  for (int layer = 0; layer < spec.layers; ++layer) {
    const auto block_params =
        tie_params(bond_partner, spec.mirror, spec.block_mirror_sign, next_param);
    for (std::size_t i = 0; i < bonds.size(); ++i)
      circuit.add(block, bonds[i].a, bonds[i].b, block_params[i]);
    if (has_rz) {
      const auto rz_params = tie_params(qubit_partner, spec.mirror, spec.rz_mirror_sign, next_param);
      for (int q = 0; q < n; ++q) circuit.add(GateKind::Rz, q, rz_params[q]);
    }
  }
  circuit.n_params = next_param;
  validate(circuit);

  ParamLayout layout;
  layout.n_params = next_param;
  layout.params_per_layer = next_param / spec.layers;
  layout.blocks_per_layer = static_cast<int>(bonds.size());
  const int cnots_per_block = spec.model == Model::heisenberg ? 3 : 2;
  layout.cnots_per_cycle = spec.layers * layout.blocks_per_layer * cnots_per_block;
  return {std::move(circuit), layout};
}

double verify_symmetry(const Circuit& circuit, const Mat& op, int draws, std::uint64_t seed) {
  if (circuit.n_qubits > 6)
    throw std::invalid_argument("verify_symmetry: dense check limited to 6 qubits");
  Rng rng(seed);
  double worst = 0;
  for (int d = 0; d < draws; ++d) {
    RVec theta(circuit.n_params);
    for (int i = 0; i < circuit.n_params; ++i) theta[i] = rng.uniform(-pi, pi);
    const Mat u = circuit_unitary(circuit, theta);
    worst = std::max(worst, (u * op - op * u).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace vqs
