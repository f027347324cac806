#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qshift/circuit.hpp"

namespace qshift {

class PassError : public std::runtime_error {
 public:
  explicit PassError(const std::string& message) : std::runtime_error(message) {}
};

struct LowerMcxOptions {
  /// Grow the decomposition block when it is smaller than the largest gate
  /// needs; otherwise throw.
  bool auto_extend = true;
};

/// Ancillas needed to lower every MCX with three or more controls: one
/// block of size (max controls - 1), shared by all gates.
inline std::uint32_t required_decomposition_ancillas(const Circuit& circuit) {
  std::uint32_t need = 0;
  for (const auto& g : circuit)
    if (g.kind() == GateKind::MCX && g.control_count() >= 3)
      need = std::max<std::uint32_t>(need, static_cast<std::uint32_t>(g.control_count() - 1));
  return need;
}

/// Replaces each C^kX (k >= 3) by the V-shaped Toffoli ladder: k-1 Toffolis
/// accumulate the AND of the controls (ascending qubit order) into c_0..c_{k-2},
/// a CX copies it onto the target, then the ladder is undone. 2(k-1) Toffolis
/// and one CX per gate. Negative controls stay on the first-layer Toffolis.
inline Circuit lower_mcx(const Circuit& circuit, const LowerMcxOptions& options = {}) {
  const auto need = required_decomposition_ancillas(circuit);
  RegisterLayout layout = circuit.layout();
  if (need > layout.decomposition_count()) {
    if (!options.auto_extend)
      throw PassError("lower_mcx: need " + std::to_string(need) +
                      " decomposition ancillas, layout has " +
                      std::to_string(layout.decomposition_count()));
    layout = layout.with_decomposition_ancillas(need);
  }

  Circuit out(layout);
  for (const auto& g : circuit) {
    if (g.kind() != GateKind::MCX || g.control_count() < 3) {
      out.append(g);
      continue;
    }
    const auto& ctl = g.controls();
    const std::size_t k = ctl.size();
    std::vector<std::uint32_t> anc(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      anc[i] = layout.decomposition_ancilla(static_cast<std::uint32_t>(i)).index;
      if (g.support_mask() >> anc[i] & 1)
        throw PassError("lower_mcx: gate already acts on decomposition ancilla " +
                        std::to_string(anc[i]));
    }
    std::vector<Gate> ladder;
    ladder.push_back(Gate::ccx(ctl[0], ctl[1], anc[0]));
    for (std::size_t i = 2; i < k; ++i)
      ladder.push_back(Gate::ccx(ctl[i], pos(anc[i - 2]), anc[i - 1]));
    for (const auto& t : ladder) out.append(t);
    out.append(Gate::cx(anc[k - 2], g.target().index));
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) out.append(*it);
  }
  return out;
}

struct CancelOptions {
  /// How many surviving gates to look back through; 0 means unbounded.
  std::size_t window = 0;
};

namespace detail {

// One sweep: each self-inverse gate looks back through gates on disjoint
// qubits for an identical partner and annihilates with it.
inline bool cancel_sweep(std::vector<Gate>& gates, std::size_t window) {
  std::vector<Gate> out;
  std::vector<bool> dead;
  out.reserve(gates.size());
  bool changed = false;
  for (auto& g : gates) {
    bool cancelled = false;
    if (g.is_self_inverse()) {
      const auto mask = g.support_mask();
      std::size_t scanned = 0;
      for (std::size_t j = out.size(); j-- > 0;) {
        if (dead[j]) continue;
        if (out[j] == g) {
          dead[j] = true;
          cancelled = true;
          break;
        }
        if (out[j].support_mask() & mask) break;
        if (window != 0 && ++scanned >= window) break;
      }
    }
    if (cancelled) {
      changed = true;
    } else {
      out.push_back(std::move(g));
      dead.push_back(false);
    }
  }
  gates.clear();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!dead[i]) gates.push_back(std::move(out[i]));
  return changed;
}

}  // namespace detail

/// Deletes pairs of identical self-inverse gates (X, H, MCX, Swap) that
/// become adjacent after commuting through gates with disjoint support.
/// Matching needs exact control polarity. Iterates to a fixpoint.
inline Circuit cancel_adjacent(const Circuit& circuit, const CancelOptions& options = {}) {
  std::vector<Gate> gates = circuit.gates();
  const std::size_t cap = std::max<std::size_t>(1, gates.size() * gates.size());
  std::size_t rounds = 0;
  while (detail::cancel_sweep(gates, options.window)) {
    if (++rounds > cap) throw PassError("cancel_adjacent: iteration cap reached");
  }
  return Circuit(circuit.layout(), std::move(gates));
}

/// X on every negatively controlled qubit, the gate with positive controls,
/// X again.
inline Circuit lower_negative_controls(const Circuit& circuit) {
  Circuit out(circuit.layout());
  for (const auto& g : circuit) {
    if (!g.has_negative_control()) {
      out.append(g);
      continue;
    }
    std::vector<Control> positive;
    std::vector<std::uint32_t> flipped;
    for (const auto& c : g.controls()) {
      positive.push_back({c.qubit, Polarity::positive});
      if (c.polarity == Polarity::negative) flipped.push_back(c.qubit.index);
    }
    for (auto q : flipped) out.append(Gate::x(q));
    out.append(g.with_controls(std::move(positive)));
    for (auto q : flipped) out.append(Gate::x(q));
  }
  return out;
}

namespace detail {

inline void append_toffoli_network(Circuit& out, std::uint32_t c1, std::uint32_t c2,
                                   std::uint32_t t) {
  constexpr double quarter = std::numbers::pi / 4.0;
  out.append(Gate::h(t));
  out.append(Gate::cx(c2, t));
  out.append(Gate::rz(t, -quarter));
  out.append(Gate::cx(c1, t));
  out.append(Gate::rz(t, quarter));
  out.append(Gate::cx(c2, t));
  out.append(Gate::rz(t, -quarter));
  out.append(Gate::cx(c1, t));
  out.append(Gate::rz(c2, quarter));
  out.append(Gate::rz(t, quarter));
  out.append(Gate::h(t));
  out.append(Gate::cx(c1, c2));
  out.append(Gate::rz(c1, quarter));
  out.append(Gate::rz(c2, -quarter));
  out.append(Gate::cx(c1, c2));
}

}  // namespace detail

/// Toffoli -> 6 CX network with T/T-dagger realized as RZ(+-pi/4). Equal to
/// the original up to global phase. Negative controls are X-conjugated first.
inline Circuit lower_toffoli(const Circuit& circuit) {
  Circuit out(circuit.layout());
  for (const auto& g : circuit) {
    if (g.kind() != GateKind::MCX || g.control_count() != 2) {
      out.append(g);
      continue;
    }
    const Circuit positive = lower_negative_controls(Circuit(circuit.layout(), {g}));
    for (const auto& h : positive) {
      if (h.kind() == GateKind::MCX) {
        detail::append_toffoli_network(out, h.controls()[0].qubit.index,
                                       h.controls()[1].qubit.index, h.target().index);
      } else {
        out.append(h);
      }
    }
  }
  return out;
}

/// Controlled phase -> 2 CX + RZ layer (equal up to global phase).
inline Circuit lower_cphase(const Circuit& circuit) {
  Circuit out(circuit.layout());
  for (const auto& g : circuit) {
    if (g.kind() != GateKind::CPhase) {
      out.append(g);
      continue;
    }
    const Circuit positive = lower_negative_controls(Circuit(circuit.layout(), {g}));
    for (const auto& h : positive) {
      if (h.kind() != GateKind::CPhase) {
        out.append(h);
        continue;
      }
      const auto c = h.controls()[0].qubit.index;
      const auto t = h.target().index;
      const double half = h.angle() / 2.0;
      out.append(Gate::rz(c, half));
      out.append(Gate::cx(c, t));
      out.append(Gate::rz(t, -half));
      out.append(Gate::cx(c, t));
      out.append(Gate::rz(t, half));
    }
  }
  return out;
}

}  // namespace qshift
