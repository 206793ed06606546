#pragma once

#include <string>
#include <vector>

#include "vqs/types.hpp"

namespace vqs {

// One Pauli string with a complex weight. `ops` has one character per qubit,
// each of 'I', 'X', 'Y', 'Z'; ops[0] acts on qubit 0 (leftmost ket label).
struct PauliTerm {
  cplx coeff;
  std::string ops;
};

// Weighted sum of Pauli strings on a fixed qubit count. Terms are kept
// canonical: sorted by string, duplicates merged, negligible weights dropped.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  void add(cplx coeff, const std::string& ops);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator*(const PauliSum& other) const;
  PauliSum scaled(cplx factor) const;

  // True when every canonical coefficient is real to within tol.
  bool is_hermitian(double tol = 1e-10) const;

 private:
  void normalize();

  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

// Dense matrix of a Pauli sum; qubit 0 is the most significant tensor factor.
Mat to_matrix(const PauliSum& sum);

// Dense matrix of a single Pauli string.
Mat pauli_string_matrix(const std::string& ops);

// Open-chain Heisenberg coupling J * sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}).
PauliSum heisenberg_chain(int n_qubits, double J);

// Open-chain transverse-field Ising J * sum_i X_i X_{i+1} + h * sum_i Z_i.
PauliSum transverse_ising_chain(int n_qubits, double J, double h);

// Collective spin operators with the spin-1/2 convention S_a = (1/2) sum_i sigma_a.
PauliSum s_z_op(int n_qubits);
PauliSum s_tot2_op(int n_qubits);

// Global Z parity, the product of Z on every qubit.
PauliSum parity_z_op(int n_qubits);

// Basis index under the chain mirror (qubit i <-> qubit n-1-i).
long mirror_index(long idx, int n_qubits);

// Permutation matrix of the chain mirror.
Mat mirror_matrix(int n_qubits);

}  // namespace vqs
