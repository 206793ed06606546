#include "vqs/compile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vqs {
namespace {

GateOp literal_1q(GateKind kind, int q, double angle) {
  GateOp op;
  op.kind = kind;
  op.q0 = q;
  op.param = ParamExpr::literal(angle);
  return op;
}

Eigen::Matrix2cd op_matrix_2x2(const GateOp& op) {
  return gate_matrix(op.kind, op.param.offset);
}

}  // namespace

LayeredCircuit layerize(const Circuit& circuit, const RVec& theta) {
  validate(circuit);
  const Circuit dec = decomposed(circuit);

  // Bound, CNOT-lowered op stream.
  std::vector<GateOp> stream;
  for (const GateOp& op : dec.ops) {
    if (op.kind == GateKind::CNOT) {
      stream.push_back(literal_1q(GateKind::H, op.q1, 0.0));
      GateOp cz;
      cz.kind = GateKind::CZ;
      cz.q0 = op.q0;
      cz.q1 = op.q1;
      stream.push_back(cz);
      stream.push_back(literal_1q(GateKind::H, op.q1, 0.0));
    } else if (op.is_parametric()) {
      stream.push_back(literal_1q(op.kind, op.q0, op.param.value(theta)));
    } else {
      stream.push_back(op);
    }
  }

  // Even cycles hold single-qubit gates, odd cycles hold CZs.
  std::vector<int> last(static_cast<size_t>(circuit.n_qubits), 0);
  int max_cycle = 0;
  std::vector<std::pair<int, GateOp>> placed;  // (cycle, op)
  for (const GateOp& op : stream) {
    if (op.kind == GateKind::Identity) continue;
    if (op.kind == GateKind::CZ) {
      const auto next_odd = [&](int q) {
        return (last[static_cast<size_t>(q)] % 2 == 0)
                   ? last[static_cast<size_t>(q)] + 1
                   : last[static_cast<size_t>(q)] + 2;
      };
      const int cycle = std::max(next_odd(op.q0), next_odd(op.q1));
      last[static_cast<size_t>(op.q0)] = cycle;
      last[static_cast<size_t>(op.q1)] = cycle;
      placed.emplace_back(cycle, op);
      max_cycle = std::max(max_cycle, cycle);
    } else {
      int& l = last[static_cast<size_t>(op.q0)];
      const int cycle = (l % 2 == 0) ? l : l + 1;
      l = cycle;
      placed.emplace_back(cycle, op);
      max_cycle = std::max(max_cycle, cycle);
    }
  }
  if (max_cycle % 2 == 1) ++max_cycle;  // close with a single-qubit cycle

  LayeredCircuit out;
  out.n_qubits = circuit.n_qubits;
  out.one_qubit.resize(static_cast<size_t>(max_cycle / 2 + 1));
  for (auto& cycle : out.one_qubit)
    cycle.resize(static_cast<size_t>(circuit.n_qubits));
  out.two_qubit.resize(static_cast<size_t>(max_cycle / 2));
  for (const auto& [cycle, op] : placed) {
    if (op.kind == GateKind::CZ)
      out.two_qubit[static_cast<size_t>(cycle / 2)].emplace_back(
          std::min(op.q0, op.q1), std::max(op.q0, op.q1));
    else
      out.one_qubit[static_cast<size_t>(cycle / 2)][static_cast<size_t>(op.q0)]
          .push_back(op);
  }
  for (auto& czs : out.two_qubit)
    std::sort(czs.begin(), czs.end());
  return out;
}

std::vector<std::vector<Eigen::Matrix2cd>> squeeze_su2(const LayeredCircuit& layers) {
  std::vector<std::vector<Eigen::Matrix2cd>> out;
  out.reserve(layers.one_qubit.size());
  for (const auto& cycle : layers.one_qubit) {
    std::vector<Eigen::Matrix2cd> row;
    row.reserve(cycle.size());
    for (const auto& gates : cycle) {
      Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
      for (const GateOp& op : gates) u = op_matrix_2x2(op) * u;
      u /= std::sqrt(u.determinant());
      row.push_back(u);
    }
    out.push_back(std::move(row));
  }
  return out;
}

ZxzxzAngles u3_decompose(const Eigen::Matrix2cd& input) {
  Eigen::Matrix2cd v = input;
  v /= std::sqrt(v.determinant());
  const double s = std::abs(v(0, 0));
  const double c = std::abs(v(0, 1));
  constexpr double kTiny = 1e-12;

  ZxzxzAngles angles;
  angles.theta_ = 2.0 * std::atan2(s, c);
  // v00 = -i sin(th/2) e^{-i(phi+lambda)/2}, v01 = -i cos(th/2) e^{-i(phi-lambda)/2}
  if (c < kTiny) {
    angles.lambda_ = 0.0;
    angles.phi_ = -2.0 * std::arg(v(0, 0)) - pi;
  } else if (s < kTiny) {
    angles.lambda_ = 0.0;
    angles.phi_ = -2.0 * std::arg(v(0, 1)) - pi;
  } else {
    const double sum = -2.0 * std::arg(v(0, 0)) - pi;   // phi + lambda
    const double diff = -2.0 * std::arg(v(0, 1)) - pi;  // phi - lambda
    angles.phi_ = 0.5 * (sum + diff);
    angles.lambda_ = 0.5 * (sum - diff);
  }
  return angles;
}

Schedule emit_schedule(const LayeredCircuit& layers) {
  const int n = layers.n_qubits;
  const auto squeezed = squeeze_su2(layers);

  Schedule sched;
  sched.n_qubits = n;
  sched.residual_frames.assign(static_cast<size_t>(n), 0.0);

  long t = 0;
  for (size_t c = 0; c < layers.one_qubit.size(); ++c) {
    for (int q = 0; q < n; ++q) {
      const ZxzxzAngles a = u3_decompose(squeezed[c][static_cast<size_t>(q)]);
      double& frame = sched.residual_frames[static_cast<size_t>(q)];
      const double p1 = -(a.lambda_ + frame);
      const double p2 = p1 - a.theta_;
      sched.pulses.push_back({t, q, 30, p1});
      sched.pulses.push_back({t + 30, q, 30, p2});
      frame = a.phi_ - p2;
    }
    t += 60;
    if (c < layers.two_qubit.size()) {
      for (const auto& [q0, q1] : layers.two_qubit[c])
        sched.czs.push_back({t, q0, q1, 120});
      t += 120;
    }
  }
  sched.total_ns = t;
  return sched;
}

Mat schedule_unitary(const Schedule& schedule) {
  // Events sorted by time; same-start events act on disjoint qubits.
  struct Event {
    long t;
    int rank;  // stable tiebreak: pulses before czs is irrelevant but fixed
    size_t idx;
    bool cz;
  };
  std::vector<Event> events;
  for (size_t i = 0; i < schedule.pulses.size(); ++i)
    events.push_back({schedule.pulses[i].t, schedule.pulses[i].qubit, i, false});
  for (size_t i = 0; i < schedule.czs.size(); ++i)
    events.push_back({schedule.czs[i].t, schedule.czs[i].q0, i, true});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.cz != b.cz) return !a.cz;
    return a.rank < b.rank;
  });

  Circuit replay(schedule.n_qubits, 0);
  for (const Event& e : events) {
    if (e.cz) {
      const CzPulse& cz = schedule.czs[e.idx];
      replay.add(GateKind::CZ, cz.q0, cz.q1);
    } else {
      const PulseEvent& p = schedule.pulses[e.idx];
      replay.add(GateKind::Rz, p.qubit, ParamExpr::literal(-p.phase));
      replay.add(GateKind::Rx, p.qubit, ParamExpr::literal(pi / 2));
      replay.add(GateKind::Rz, p.qubit, ParamExpr::literal(p.phase));
    }
  }
  for (int q = 0; q < schedule.n_qubits; ++q)
    replay.add(GateKind::Rz, q, ParamExpr::literal(schedule.residual_frames[static_cast<size_t>(q)]));
  return circuit_unitary(replay, RVec());
}

CompileResult compile_to_pulses(const Circuit& circuit, const RVec& theta) {
  CompileResult result;
  result.layers = layerize(circuit, theta);
  const auto squeezed = squeeze_su2(result.layers);
  result.angles.reserve(squeezed.size());
  for (const auto& row : squeezed) {
    std::vector<ZxzxzAngles> arow;
    arow.reserve(row.size());
    for (const auto& u : row) arow.push_back(u3_decompose(u));
    result.angles.push_back(std::move(arow));
  }
  result.schedule = emit_schedule(result.layers);
  return result;
}

double tanh_envelope(double t, double amplitude, const EnvelopeParams& params) {
  if (std::abs(t) > params.tau / 2) return 0.0;
  return amplitude * std::tanh(4 * params.eps * (0.5 - std::abs(t) / params.tau)) /
         std::tanh(2 * params.eps);
}

double cz_waveform(double t, double amplitude, const EnvelopeParams& params) {
  const double tau = params.tau;
  if (t < 0 || t >= 2 * tau) return 0.0;
  if (t < tau) return tanh_envelope(t - tau / 2, amplitude, params);
  return -tanh_envelope(t - 3 * tau / 2, amplitude, params);
}

std::string schedule_to_json(const Schedule& schedule, const EnvelopeParams& params) {
  nlohmann::json j;
  j["n_qubits"] = schedule.n_qubits;
  j["total_ns"] = schedule.total_ns;
  j["envelope"] = {{"eps", params.eps}, {"tau", params.tau}};
  j["pulses"] = nlohmann::json::array();
  for (const PulseEvent& p : schedule.pulses)
    j["pulses"].push_back({{"t", p.t},
                           {"qubit", p.qubit},
                           {"duration", p.duration},
                           {"phase", p.phase}});
  j["cz"] = nlohmann::json::array();
  for (const CzPulse& c : schedule.czs)
    j["cz"].push_back(
        {{"t", c.t}, {"q0", c.q0}, {"q1", c.q1}, {"duration", c.duration}});
  j["residual_frames"] = schedule.residual_frames;
  return j.dump(2) + "\n";
}

std::string schedule_to_csv(const Schedule& schedule) {
  std::ostringstream out;
  out.precision(17);
  out << "t,kind,q0,q1,duration,phase\n";
  size_t pi_ = 0, ci = 0;
  while (pi_ < schedule.pulses.size() || ci < schedule.czs.size()) {
    const bool take_pulse =
        ci >= schedule.czs.size() ||
        (pi_ < schedule.pulses.size() &&
         schedule.pulses[pi_].t <= schedule.czs[ci].t);
    if (take_pulse) {
      const PulseEvent& p = schedule.pulses[pi_++];
      out << p.t << ",pulse," << p.qubit << ",," << p.duration << ',' << p.phase
          << '\n';
    } else {
      const CzPulse& c = schedule.czs[ci++];
      out << c.t << ",cz," << c.q0 << ',' << c.q1 << ',' << c.duration << ",\n";
    }
  }
  return out.str();
}

}  // namespace vqs
