#pragma once

#include <complex>
#include <Eigen/Dense>

namespace vqs {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

// Dimension of the Hilbert space for n qubits.
inline long dim_of(int n_qubits) { return 1L << n_qubits; }

// Bit of basis index `idx` belonging to qubit q. Qubit 0 is the leftmost
// label in a ket, i.e. the most significant bit of the index.
inline int bit_of(long idx, int qubit, int n_qubits) {
  return static_cast<int>((idx >> (n_qubits - 1 - qubit)) & 1L);
}

// Basis index with qubit q's bit replaced by `value`.
inline long with_bit(long idx, int qubit, int n_qubits, int value) {
  const long mask = 1L << (n_qubits - 1 - qubit);
  return value ? (idx | mask) : (idx & ~mask);
}

}  // namespace vqs
