#include "vqs/pauli.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vqs {

namespace {

constexpr double kDropTol = 1e-14;

bool valid_ops(const std::string& ops) {
  return std::all_of(ops.begin(), ops.end(), [](char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
  });
}

// Single-qubit product b*a (b applied after a): result letter and phase.
void pauli_mul(char a, char b, char& out, cplx& phase) {
  if (a == 'I') { out = b; return; }
  if (b == 'I') { out = a; return; }
  if (a == b) { out = 'I'; return; }
  // Cyclic: XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
  static const std::string cyc = "XYZ";
  const int ia = static_cast<int>(cyc.find(a));
  const int ib = static_cast<int>(cyc.find(b));
  out = cyc[3 - ia - ib];
  phase *= ((ia - ib + 3) % 3 == 1) ? cplx(0, 1) : cplx(0, -1);
}

Mat pauli_matrix_1q(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return m;
}

}  // namespace

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("PauliSum: need at least one qubit");
}

void PauliSum::add(cplx coeff, const std::string& ops) {
  if (static_cast<int>(ops.size()) != n_qubits_ || !valid_ops(ops))
    throw std::invalid_argument("PauliSum::add: bad Pauli string '" + ops + "'");
  terms_.push_back({coeff, ops});
  normalize();
}

void PauliSum::normalize() {
  std::map<std::string, cplx> merged;
  for (const auto& t : terms_) merged[t.ops] += t.coeff;
  terms_.clear();
  for (const auto& [ops, c] : merged)
    if (std::abs(c) > kDropTol) terms_.push_back({c, ops});
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  PauliSum out = *this;
  out += other;
  return out;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  PauliSum out(n_qubits_);
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      cplx phase = 1.0;
      std::string ops(n_qubits_, 'I');
      for (int q = 0; q < n_qubits_; ++q) pauli_mul(b.ops[q], a.ops[q], ops[q], phase);
      out.terms_.push_back({a.coeff * b.coeff * phase, ops});
    }
  }
  out.normalize();
  return out;
}

PauliSum PauliSum::scaled(cplx factor) const {
  PauliSum out = *this;
  for (auto& t : out.terms_) t.coeff *= factor;
  out.normalize();
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

Mat pauli_string_matrix(const std::string& ops) {
  if (!valid_ops(ops) || ops.empty())
    throw std::invalid_argument("bad Pauli string '" + ops + "'");
  Mat m = pauli_matrix_1q(ops[0]);
  for (std::size_t q = 1; q < ops.size(); ++q) {
    const Mat f = pauli_matrix_1q(ops[q]);
    Mat next(m.rows() * 2, m.cols() * 2);
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = m(r, c) * f;
    m.swap(next);
  }
  return m;
}

Mat to_matrix(const PauliSum& sum) {
  const long d = dim_of(sum.n_qubits());
  Mat m = Mat::Zero(d, d);
  for (const auto& t : sum.terms()) m += t.coeff * pauli_string_matrix(t.ops);
  return m;
}

PauliSum heisenberg_chain(int n_qubits, double J) {
  if (n_qubits < 2) throw std::invalid_argument("heisenberg_chain: need >= 2 qubits");
  PauliSum h(n_qubits);
  for (int i = 0; i + 1 < n_qubits; ++i) {
    for (char p : {'X', 'Y', 'Z'}) {
      std::string ops(n_qubits, 'I');
      ops[i] = p;
      ops[i + 1] = p;
      h.add(J, ops);
    }
  }
  return h;
}

PauliSum transverse_ising_chain(int n_qubits, double J, double h) {
  if (n_qubits < 2) throw std::invalid_argument("transverse_ising_chain: need >= 2 qubits");
  PauliSum sum(n_qubits);
  for (int i = 0; i + 1 < n_qubits; ++i) {
    std::string ops(n_qubits, 'I');
    ops[i] = 'X';
    ops[i + 1] = 'X';
    sum.add(J, ops);
  }
  for (int i = 0; i < n_qubits; ++i) {
    std::string ops(n_qubits, 'I');
    ops[i] = 'Z';
    sum.add(h, ops);
  }
  return sum;
}

PauliSum s_z_op(int n_qubits) {
  PauliSum sum(n_qubits);
  for (int i = 0; i < n_qubits; ++i) {
    std::string ops(n_qubits, 'I');
    ops[i] = 'Z';
    sum.add(0.5, ops);
  }
  return sum;
}

PauliSum s_tot2_op(int n_qubits) {
  // (sum_i S_i)^2 = 3n/4 + (1/2) sum_{i<j} (X_i X_j + Y_i Y_j + Z_i Z_j).
  PauliSum sum(n_qubits);
  sum.add(0.75 * n_qubits, std::string(n_qubits, 'I'));
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) {
      for (char p : {'X', 'Y', 'Z'}) {
        std::string ops(n_qubits, 'I');
        ops[i] = p;
        ops[j] = p;
        sum.add(0.5, ops);
      }
    }
  }
  return sum;
}

PauliSum parity_z_op(int n_qubits) {
  PauliSum sum(n_qubits);
  sum.add(1.0, std::string(n_qubits, 'Z'));
  return sum;
}

long mirror_index(long idx, int n_qubits) {
  long out = 0;
  for (int q = 0; q < n_qubits; ++q)
    out |= static_cast<long>(bit_of(idx, q, n_qubits)) << q;
  return out;
}

Mat mirror_matrix(int n_qubits) {
  const long d = dim_of(n_qubits);
  Mat m = Mat::Zero(d, d);
  for (long i = 0; i < d; ++i) m(mirror_index(i, n_qubits), i) = 1.0;
  return m;
}

}  // namespace vqs
