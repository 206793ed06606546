#include "vqs/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace vqs {

namespace {

constexpr double kDegenTol = 1e-8;   // energy gap below which levels share a block
constexpr double kLabelTol = 1e-4;   // distance to the nearest allowed eigenvalue

int qubits_from_dim(long d) {
  int n = 0;
  while ((1L << n) < d) ++n;
  if ((1L << n) != d) throw std::invalid_argument("state dimension is not a power of two");
  return n;
}

// Rotate the columns of `basis` so each listed Hermitian operator is diagonal
// on them, splitting recursively by eigenvalue. Returns per-column eigenvalues
// of each operator, aligned with the final basis columns.
void diagonalize_within(Mat& basis, const std::vector<Mat>& ops, std::size_t which,
                        long col0, long ncols, std::vector<RVec>& values) {
  if (which == ops.size() || ncols == 0) return;
  const Mat block = basis.middleCols(col0, ncols);
  const Mat proj = block.adjoint() * ops[which] * block;
  Eigen::SelfAdjointEigenSolver<Mat> es((proj + proj.adjoint()) / 2.0);
  basis.middleCols(col0, ncols) = block * es.eigenvectors();
  values[which].segment(col0, ncols) = es.eigenvalues();
  long lo = 0;
  while (lo < ncols) {
    long hi = lo + 1;
    while (hi < ncols && es.eigenvalues()[hi] - es.eigenvalues()[lo] < kDegenTol) ++hi;
    diagonalize_within(basis, ops, which + 1, col0 + lo, hi - lo, values);
    lo = hi;
  }
}

double round_to_half_integer(double x) {
  const double r = std::round(2.0 * x) / 2.0;
  return r == 0.0 ? 0.0 : r;  // never -0
}

double checked_spin_from_s2(double s2, const char* what) {
  const double s = round_to_half_integer((-1.0 + std::sqrt(1.0 + 4.0 * std::max(s2, 0.0))) / 2.0);
  if (std::abs(s * (s + 1.0) - s2) > kLabelTol)
    throw std::runtime_error(std::string(what) + ": not a symmetry eigenstate");
  return s;
}

double checked_half_integer(double x, const char* what) {
  const double r = round_to_half_integer(x);
  if (std::abs(r - x) > kLabelTol)
    throw std::runtime_error(std::string(what) + ": not a symmetry eigenstate");
  return r;
}

int checked_sign(double x, const char* what) {
  if (std::abs(std::abs(x) - 1.0) > kLabelTol)
    throw std::runtime_error(std::string(what) + ": not a symmetry eigenstate");
  return x > 0 ? 1 : -1;
}

std::vector<Mat> symmetry_ops(int n, Model model) {
  if (model == Model::heisenberg)
    return {to_matrix(s_tot2_op(n)), to_matrix(s_z_op(n)), mirror_matrix(n)};
  return {to_matrix(parity_z_op(n)), mirror_matrix(n)};
}

QuantumNumbers labels_from_values(Model model, const std::vector<double>& v) {
  QuantumNumbers q;
  if (model == Model::heisenberg) {
    q.s = checked_spin_from_s2(v[0], "S^2");
    q.s_z = checked_half_integer(v[1], "S_z");
    q.mirror = checked_sign(v[2], "mirror");
  } else {
    q.parity_z = checked_sign(v[0], "Z parity");
    q.mirror = checked_sign(v[1], "mirror");
  }
  return q;
}

}  // namespace

Spectrum exact_spectrum(const PauliSum& hamiltonian) {
  if (!hamiltonian.is_hermitian())
    throw std::invalid_argument("exact_spectrum: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(to_matrix(hamiltonian));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exact_spectrum: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<LabeledLevel> labeled_spectrum(const PauliSum& hamiltonian, Model model) {
  const int n = hamiltonian.n_qubits();
  Spectrum spec = exact_spectrum(hamiltonian);
  const auto ops = symmetry_ops(n, model);
  const long d = spec.energies.size();

  Mat basis = spec.vectors;
  std::vector<RVec> values(ops.size(), RVec::Zero(d));
  long lo = 0;
  while (lo < d) {
    long hi = lo + 1;
    while (hi < d && spec.energies[hi] - spec.energies[lo] < kDegenTol) ++hi;
    diagonalize_within(basis, ops, 0, lo, hi - lo, values);
    lo = hi;
  }

  std::vector<LabeledLevel> out;
  out.reserve(d);
  for (long i = 0; i < d; ++i) {
    std::vector<double> v;
    for (const auto& col : values) v.push_back(col[i]);
    out.push_back({spec.energies[i], basis.col(i), labels_from_values(model, v)});
  }
  return out;
}

QuantumNumbers quantum_numbers(const Vec& state, Model model, double residual_tol) {
  const int n = qubits_from_dim(state.size());
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("quantum_numbers: state is not normalized");

  const auto ops = symmetry_ops(n, model);
  std::vector<double> v;
  for (const auto& op : ops) {
    const Vec image = op * state;
    const double expect = std::real(state.dot(image));
    if ((image - expect * state).norm() > residual_tol)
      throw std::runtime_error("quantum_numbers: not a symmetry eigenstate");
    v.push_back(expect);
  }
  return labels_from_values(model, v);
}

}  // namespace vqs
