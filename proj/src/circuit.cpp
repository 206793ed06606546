#include "vqs/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace vqs {

namespace {

struct KindInfo {
  const char* name;
  int arity;
  bool parametric;
};

const KindInfo& info_of(GateKind kind) {
  static const KindInfo table[] = {
      {"H", 1, false},     {"X", 1, false},    {"Y", 1, false},
      {"Z", 1, false},     {"XHALF", 1, false}, {"RX", 1, true},
      {"RY", 1, true},     {"RZ", 1, true},    {"CNOT", 2, false},
      {"CZ", 2, false},    {"ID", 1, false},   {"NH", 2, true},
      {"NI", 2, true},
  };
  return table[static_cast<int>(kind)];
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_param(const ParamExpr& p) {
  if (p.is_literal()) return fmt_double(p.offset);
  std::string out = "p" + std::to_string(p.index);
  if (p.coefficient != 1.0) out += "*" + fmt_double(p.coefficient);
  if (p.offset != 0.0) {
    if (p.offset > 0.0) out += "+";
    out += fmt_double(p.offset);
  }
  return out;
}

ParamExpr parse_param(const std::string& tok) {
  const char* s = tok.c_str();
  char* end = nullptr;
  if (tok[0] != 'p' || tok.size() < 2 || !std::isdigit(static_cast<unsigned char>(tok[1]))) {
    const double lit = std::strtod(s, &end);
    if (end != s + tok.size()) throw std::invalid_argument("bad angle '" + tok + "'");
    return ParamExpr::literal(lit);
  }
  ParamExpr p;
  p.index = static_cast<int>(std::strtol(s + 1, &end, 10));
  if (*end == '*') {
    const char* c = end + 1;
    p.coefficient = std::strtod(c, &end);
    if (end == c) throw std::invalid_argument("bad angle '" + tok + "'");
  }
  if (*end == '+' || *end == '-') {
    const char* c = end;
    p.offset = std::strtod(c, &end);
    if (end == c) throw std::invalid_argument("bad angle '" + tok + "'");
  }
  if (*end != '\0') throw std::invalid_argument("bad angle '" + tok + "'");
  return p;
}

}  // namespace

double ParamExpr::value(const RVec& theta) const {
  if (is_literal()) return offset;
  if (index >= theta.size()) throw std::invalid_argument("param index out of range");
  return coefficient * theta[index] + offset;
}

ParamExpr ParamExpr::affine(double mult, double add) const {
  if (is_literal()) return literal(mult * offset + add);
  return {index, mult * coefficient, mult * offset + add};
}

bool GateOp::is_two_qubit() const { return info_of(kind).arity == 2; }
bool GateOp::is_parametric() const { return info_of(kind).parametric; }

Circuit& Circuit::add(GateKind kind, int q) {
  ops.push_back({kind, q, -1, {}});
  return *this;
}

Circuit& Circuit::add(GateKind kind, int q0, int q1) {
  ops.push_back({kind, q0, q1, {}});
  return *this;
}

Circuit& Circuit::add(GateKind kind, int q, ParamExpr p) {
  ops.push_back({kind, q, -1, p});
  return *this;
}

Circuit& Circuit::add(GateKind kind, int q0, int q1, ParamExpr p) {
  ops.push_back({kind, q0, q1, p});
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits != n_qubits || other.n_params != n_params)
    throw std::invalid_argument("Circuit::append: shape mismatch");
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
  return *this;
}

void validate(const Circuit& circuit) {
  if (circuit.n_qubits < 1) throw std::invalid_argument("circuit has no qubits");
  if (circuit.n_params < 0) throw std::invalid_argument("negative parameter count");
  for (const auto& op : circuit.ops) {
    const auto& ki = info_of(op.kind);
    if (op.q0 < 0 || op.q0 >= circuit.n_qubits)
      throw std::invalid_argument("qubit index out of range");
    if (ki.arity == 2) {
      if (op.q1 < 0 || op.q1 >= circuit.n_qubits)
        throw std::invalid_argument("qubit index out of range");
      if (op.q1 == op.q0) throw std::invalid_argument("two-qubit gate with equal targets");
    } else if (op.q1 != -1) {
      throw std::invalid_argument("single-qubit gate with two targets");
    }
    if (ki.parametric && !op.param.is_literal() && op.param.index >= circuit.n_params)
      throw std::invalid_argument("param index out of range");
    if (ki.parametric && !op.param.is_literal() && op.param.coefficient == 0.0)
      throw std::invalid_argument("param expression with zero coefficient");
  }
}

Mat gate_matrix(GateKind kind, double angle) {
  const cplx i(0, 1);
  switch (kind) {
    case GateKind::H: {
      Mat m(2, 2);
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    }
    case GateKind::X: {
      Mat m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Y: {
      Mat m(2, 2);
      m << 0, -i, i, 0;
      return m;
    }
    case GateKind::Z: {
      Mat m(2, 2);
      m << 1, 0, 0, -1;
      return m;
    }
    case GateKind::XHalf:
      return gate_matrix(GateKind::Rx, pi / 2);
    case GateKind::Rx: {
      Mat m(2, 2);
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -i * s, -i * s, c;
      return m;
    }
    case GateKind::Ry: {
      Mat m(2, 2);
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::Rz: {
      Mat m(2, 2);
      m << std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2));
      return m;
    }
    case GateKind::CNOT: {
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case GateKind::CZ: {
      Mat m = Mat::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    }
    case GateKind::Identity:
      return Mat::Identity(2, 2);
    case GateKind::NH: {
      // Eigenspaces: |00>, |11>, (|01>+|10>)/sqrt2 at +1; (|01>-|10>)/sqrt2 at -3.
      const cplx ep = std::exp(i * angle), em = std::exp(-3.0 * i * angle);
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = m(3, 3) = ep;
      m(1, 1) = m(2, 2) = (ep + em) / 2.0;
      m(1, 2) = m(2, 1) = (ep - em) / 2.0;
      return m;
    }
    case GateKind::NI: {
      // exp(-i t XX / 2) = cos(t/2) I - i sin(t/2) XX.
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
      m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = -i * s;
      return m;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

namespace {

// Gate unitary embedded into the full register.
Mat embed(const GateOp& op, double angle, int n_qubits) {
  const Mat u = gate_matrix(op.kind, angle);
  const long d = dim_of(n_qubits);
  Mat full = Mat::Zero(d, d);
  if (!op.is_two_qubit()) {
    for (long r = 0; r < d; ++r) {
      const int a = bit_of(r, op.q0, n_qubits);
      for (int ap = 0; ap < 2; ++ap)
        full(with_bit(r, op.q0, n_qubits, ap), r) += u(ap, a);
    }
  } else {
    for (long r = 0; r < d; ++r) {
      const int a = bit_of(r, op.q0, n_qubits);
      const int b = bit_of(r, op.q1, n_qubits);
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          const long rp = with_bit(with_bit(r, op.q0, n_qubits, ap), op.q1, n_qubits, bp);
          full(rp, r) += u((ap << 1) | bp, (a << 1) | b);
        }
    }
  }
  return full;
}

}  // namespace

Mat circuit_unitary(const Circuit& circuit, const RVec& theta) {
  validate(circuit);
  const long d = dim_of(circuit.n_qubits);
  Mat u = Mat::Identity(d, d);
  for (const auto& op : circuit.ops)
    u = embed(op, op.is_parametric() ? op.param.value(theta) : 0.0, circuit.n_qubits) * u;
  return u;
}

Circuit inverted(const Circuit& circuit) {
  Circuit out(circuit.n_qubits, circuit.n_params);
  for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
    GateOp op = *it;
    switch (op.kind) {
      case GateKind::H:
      case GateKind::X:
      case GateKind::Y:
      case GateKind::Z:
      case GateKind::CNOT:
      case GateKind::CZ:
      case GateKind::Identity:
        break;  // self-inverse
      case GateKind::XHalf:
        op.kind = GateKind::Rx;
        op.param = ParamExpr::literal(-pi / 2);
        break;
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz:
      case GateKind::NH:
      case GateKind::NI:
        op.param = op.param.affine(-1.0, 0.0);
        break;
    }
    out.ops.push_back(op);
  }
  return out;
}

void append_nh_template(Circuit& out, int a, int b, const ParamExpr& t) {
  out.add(GateKind::Rz, b, ParamExpr::literal(-pi / 2));
  out.add(GateKind::CNOT, b, a);
  out.add(GateKind::Rz, a, t.affine(-2.0, pi / 2));
  out.add(GateKind::Ry, b, t.affine(2.0, -pi / 2));
  out.add(GateKind::CNOT, a, b);
  out.add(GateKind::Ry, b, t.affine(-2.0, pi / 2));
  out.add(GateKind::CNOT, b, a);
  out.add(GateKind::Rz, a, ParamExpr::literal(pi / 2));
}

void append_ni_template(Circuit& out, int a, int b, const ParamExpr& t) {
  out.add(GateKind::CNOT, a, b);
  out.add(GateKind::Rx, a, t);
  out.add(GateKind::CNOT, a, b);
}

Circuit decomposed(const Circuit& circuit) {
  Circuit out(circuit.n_qubits, circuit.n_params);
  for (const auto& op : circuit.ops) {
    if (op.kind == GateKind::NH)
      append_nh_template(out, op.q0, op.q1, op.param);
    else if (op.kind == GateKind::NI)
      append_ni_template(out, op.q0, op.q1, op.param);
    else
      out.ops.push_back(op);
  }
  return out;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "qubits " << circuit.n_qubits << "\n";
  os << "params " << circuit.n_params << "\n";
  for (const auto& op : circuit.ops) {
    os << info_of(op.kind).name << " " << op.q0;
    if (op.is_two_qubit()) os << " " << op.q1;
    if (op.is_parametric()) os << " " << fmt_param(op.param);
    os << "\n";
  }
  return os.str();
}

Circuit from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Circuit out;
  bool have_header = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "qubits") {
      int k = 0;
      if (!(ls >> k)) throw std::invalid_argument("bad qubits line");
      out.n_qubits = k;
      have_header = true;
      continue;
    }
    if (tok == "params") {
      int k = 0;
      if (!(ls >> k)) throw std::invalid_argument("bad params line");
      out.n_params = k;
      continue;
    }
    if (!have_header) throw std::invalid_argument("circuit text must open with 'qubits N'");
    GateKind kind;
    bool found = false;
    for (int k = 0; k <= static_cast<int>(GateKind::NI); ++k) {
      if (tok == info_of(static_cast<GateKind>(k)).name) {
        kind = static_cast<GateKind>(k);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown gate kind '" + tok + "'");
    const auto& ki = info_of(kind);
    GateOp op{kind, -1, -1, {}};
    if (!(ls >> op.q0)) throw std::invalid_argument("missing qubit on '" + tok + "'");
    if (ki.arity == 2 && !(ls >> op.q1))
      throw std::invalid_argument("missing second qubit on '" + tok + "'");
    if (ki.parametric) {
      std::string ptok;
      if (!(ls >> ptok)) throw std::invalid_argument("missing angle on '" + tok + "'");
      op.param = parse_param(ptok);
    }
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("trailing tokens on '" + line + "'");
    out.ops.push_back(op);
  }
  if (!have_header) throw std::invalid_argument("circuit text must open with 'qubits N'");
  validate(out);
  return out;
}

const char* kind_name(GateKind kind) { return info_of(kind).name; }

}  // namespace vqs
