#pragma once

#include <string>
#include <vector>

#include "vqs/types.hpp"

namespace vqs {

enum class GateKind {
  H, X, Y, Z, XHalf,   // fixed single-qubit
  Rx, Ry, Rz,          // parametric single-qubit
  CNOT, CZ,            // fixed two-qubit
  Identity,            // explicit placeholder
  NH,                  // exp(+i t (XX + YY + ZZ)) on a qubit pair
  NI,                  // exp(-i t XX / 2) on a qubit pair
};

// Affine map from one shared parameter vector entry to a gate angle:
// angle = coefficient * theta[index] + offset. index -1 marks a literal
// angle held entirely in `offset`.
struct ParamExpr {
  int index = -1;
  double coefficient = 1.0;
  double offset = 0.0;

  static ParamExpr literal(double angle) { return {-1, 1.0, angle}; }
  static ParamExpr var(int index, double coefficient = 1.0, double offset = 0.0) {
    return {index, coefficient, offset};
  }

  bool is_literal() const { return index < 0; }
  double value(const RVec& theta) const;

  // Composed with an outer affine map: angle -> mult * angle + add.
  ParamExpr affine(double mult, double add) const;
};

struct GateOp {
  GateKind kind;
  int q0 = -1;
  int q1 = -1;              // -1 on single-qubit gates
  ParamExpr param;          // used by Rx/Ry/Rz/NH/NI only

  bool is_two_qubit() const;
  bool is_parametric() const;
};

struct Circuit {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  Circuit(int n_qubits, int n_params) : n_qubits(n_qubits), n_params(n_params) {}

  Circuit& add(GateKind kind, int q);
  Circuit& add(GateKind kind, int q0, int q1);
  Circuit& add(GateKind kind, int q, ParamExpr p);
  Circuit& add(GateKind kind, int q0, int q1, ParamExpr p);
  Circuit& append(const Circuit& other);  // same qubit/param space
};

// Throws std::invalid_argument on out-of-range qubits or parameter indices,
// coincident two-qubit targets, or arity/kind mismatches.
void validate(const Circuit& circuit);

// 2x2 or 4x4 unitary of one gate at a bound angle (NH/NI in closed form).
Mat gate_matrix(GateKind kind, double angle);

// Full 2^n x 2^n product of the embedded gate unitaries, in order. Brute
// force; meant as the reference implementation, not the fast path.
Mat circuit_unitary(const Circuit& circuit, const RVec& theta);

// Exact inverse circuit: reversed order, angles negated.
Circuit inverted(const Circuit& circuit);

// Circuit with every NH/NI block replaced by its CNOT template. NH costs
// exactly three CNOTs, NI exactly two; parameter expressions stay affine in
// the same shared parameters.
Circuit decomposed(const Circuit& circuit);

// The templates themselves, as appendable fragments.
void append_nh_template(Circuit& out, int a, int b, const ParamExpr& t);
void append_ni_template(Circuit& out, int a, int b, const ParamExpr& t);

// Plain-text serialization, one op per line; stable under round-trips.
std::string to_text(const Circuit& circuit);
Circuit from_text(const std::string& text);

const char* kind_name(GateKind kind);

}  // namespace vqs
