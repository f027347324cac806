#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qshift {

class CircuitError : public std::invalid_argument {
 public:
  explicit CircuitError(const std::string& message)
      : std::invalid_argument(message) {}
};

/// Position of a qubit in the global ordering. Qubit 0 is the least
/// significant bit of a basis-state index.
struct QubitId {
  std::uint32_t index = 0;

  constexpr QubitId() = default;
  constexpr explicit QubitId(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(QubitId, QubitId) = default;
};

enum class Polarity : std::uint8_t {
  positive,  // fires on |1>
  negative,  // fires on |0>
};

struct Control {
  QubitId qubit;
  Polarity polarity = Polarity::positive;

  friend constexpr auto operator<=>(const Control&, const Control&) = default;
};

constexpr Control pos(std::uint32_t q) { return {QubitId{q}, Polarity::positive}; }
constexpr Control neg(std::uint32_t q) { return {QubitId{q}, Polarity::negative}; }

enum class GateKind : std::uint8_t { X, H, RZ, Phase, SX, MCX, CPhase, Swap };

inline const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::RZ: return "rz";
    case GateKind::Phase: return "p";
    case GateKind::SX: return "sx";
    case GateKind::MCX: return "mcx";
    case GateKind::CPhase: return "cp";
    case GateKind::Swap: return "swap";
  }
  return "?";
}

/// A single circuit element. Construct through the named factories; they
/// enforce the arity rules and keep controls sorted by qubit, so two gates
/// with the same action compare equal.
class Gate {
 public:
  static Gate x(std::uint32_t q) { return Gate(GateKind::X, {QubitId{q}}, {}, 0.0); }
  static Gate h(std::uint32_t q) { return Gate(GateKind::H, {QubitId{q}}, {}, 0.0); }
  static Gate sx(std::uint32_t q) { return Gate(GateKind::SX, {QubitId{q}}, {}, 0.0); }
  static Gate rz(std::uint32_t q, double angle) {
    return Gate(GateKind::RZ, {QubitId{q}}, {}, angle);
  }
  static Gate phase(std::uint32_t q, double angle) {
    return Gate(GateKind::Phase, {QubitId{q}}, {}, angle);
  }
  static Gate swap(std::uint32_t q0, std::uint32_t q1) {
    if (q1 < q0) std::swap(q0, q1);
    return Gate(GateKind::Swap, {QubitId{q0}, QubitId{q1}}, {}, 0.0);
  }
  /// X on `target` conditioned on every control. Zero controls yields X.
  static Gate mcx(std::vector<Control> controls, std::uint32_t target) {
    if (controls.empty()) return x(target);
    return Gate(GateKind::MCX, {QubitId{target}}, std::move(controls), 0.0);
  }
  static Gate cx(Control control, std::uint32_t target) {
    return mcx({control}, target);
  }
  static Gate cx(std::uint32_t control, std::uint32_t target) {
    return mcx({pos(control)}, target);
  }
  static Gate ccx(Control c0, Control c1, std::uint32_t target) {
    return mcx({c0, c1}, target);
  }
  /// diag(1, e^{i angle}) on `target`, conditioned on `control`.
  static Gate cphase(Control control, std::uint32_t target, double angle) {
    return Gate(GateKind::CPhase, {QubitId{target}}, {control}, angle);
  }

  GateKind kind() const { return kind_; }
  const std::vector<QubitId>& targets() const { return targets_; }
  QubitId target() const { return targets_.front(); }
  const std::vector<Control>& controls() const { return controls_; }
  std::size_t control_count() const { return controls_.size(); }
  double angle() const { return angle_; }

  bool has_angle() const {
    return kind_ == GateKind::RZ || kind_ == GateKind::Phase ||
           kind_ == GateKind::CPhase;
  }
  bool is_self_inverse() const {
    return kind_ == GateKind::X || kind_ == GateKind::H ||
           kind_ == GateKind::MCX || kind_ == GateKind::Swap;
  }
  /// X, CX, Toffoli, MCX: gates whose unitary is a basis permutation.
  bool is_x_family() const {
    return kind_ == GateKind::X || kind_ == GateKind::MCX;
  }
  bool has_negative_control() const {
    return std::any_of(controls_.begin(), controls_.end(), [](const Control& c) {
      return c.polarity == Polarity::negative;
    });
  }

  /// All qubits touched, controls first then targets.
  std::vector<QubitId> support() const {
    std::vector<QubitId> out;
    out.reserve(controls_.size() + targets_.size());
    for (const auto& c : controls_) out.push_back(c.qubit);
    out.insert(out.end(), targets_.begin(), targets_.end());
    return out;
  }
  std::uint64_t support_mask() const {
    std::uint64_t mask = 0;
    for (const auto& c : controls_) mask |= std::uint64_t{1} << c.qubit.index;
    for (const auto& t : targets_) mask |= std::uint64_t{1} << t.index;
    return mask;
  }
  std::uint32_t max_qubit() const {
    std::uint32_t m = 0;
    for (const auto& q : support()) m = std::max(m, q.index);
    return m;
  }

  Gate with_controls(std::vector<Control> controls) const {
    return Gate(kind_, targets_, std::move(controls), angle_);
  }

  /// Single gate whose unitary is the adjoint, where one exists in the IR.
  /// SX has no single-gate adjoint here; see inverse(Circuit).
  std::optional<Gate> adjoint() const {
    switch (kind_) {
      case GateKind::RZ:
      case GateKind::Phase:
      case GateKind::CPhase:
        return Gate(kind_, targets_, controls_, -angle_);
      case GateKind::SX:
        return std::nullopt;
      default:
        return *this;
    }
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind_ == b.kind_ && a.targets_ == b.targets_ &&
           a.controls_ == b.controls_ && a.angle_ == b.angle_;
  }

 private:
  Gate(GateKind kind, std::vector<QubitId> targets, std::vector<Control> controls,
       double angle)
      : kind_(kind),
        targets_(std::move(targets)),
        controls_(std::move(controls)),
        angle_(angle) {
    std::sort(controls_.begin(), controls_.end());
    validate();
  }

  void validate() const {
    const std::size_t expected_targets = kind_ == GateKind::Swap ? 2 : 1;
    if (targets_.size() != expected_targets)
      throw CircuitError(std::string("wrong target count for ") + to_string(kind_));
    switch (kind_) {
      case GateKind::MCX:
        if (controls_.empty()) throw CircuitError("mcx requires at least one control");
        break;
      case GateKind::CPhase:
        if (controls_.size() != 1) throw CircuitError("cp requires exactly one control");
        break;
      default:
        if (!controls_.empty())
          throw CircuitError(std::string(to_string(kind_)) + " takes no controls");
    }
    if (!std::isfinite(angle_)) throw CircuitError("gate angle must be finite");
    if (!has_angle() && angle_ != 0.0) throw CircuitError("angle on a fixed gate");
    std::uint64_t seen = 0;
    for (const auto& q : support()) {
      if (q.index >= 64) throw CircuitError("qubit index exceeds 63");
      const std::uint64_t bit = std::uint64_t{1} << q.index;
      if (seen & bit)
        throw CircuitError("qubit " + std::to_string(q.index) + " used twice in one gate");
      seen |= bit;
    }
  }

  GateKind kind_;
  std::vector<QubitId> targets_;
  std::vector<Control> controls_;
  double angle_;
};

/// Qubit roles of a shift circuit. Ids are contiguous from 0 in the order
/// position register, coin, parallel ancilla `a`, decomposition block `c`.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::uint32_t position_count, bool parallel_ancilla,
                 std::uint32_t decomposition_ancillas = 0)
      : positions_(position_count),
        has_parallel_ancilla_(parallel_ancilla),
        decomposition_(decomposition_ancillas) {}

  /// Generic register of `qubits` qubits: the top one plays the coin role.
  static RegisterLayout plain(std::uint32_t qubits) {
    if (qubits == 0) throw CircuitError("layout needs at least one qubit");
    return RegisterLayout(qubits - 1, false, 0);
  }

  std::uint32_t position_count() const { return positions_; }
  std::uint32_t working_count() const { return positions_ + 1; }
  QubitId position(std::uint32_t i) const {
    if (i >= positions_) throw CircuitError("position index out of range");
    return QubitId{i};
  }
  QubitId coin() const { return QubitId{positions_}; }
  bool has_parallel_ancilla() const { return has_parallel_ancilla_; }
  std::optional<QubitId> parallel_ancilla() const {
    if (!has_parallel_ancilla_) return std::nullopt;
    return QubitId{positions_ + 1};
  }
  std::uint32_t decomposition_count() const { return decomposition_; }
  QubitId decomposition_ancilla(std::uint32_t i) const {
    if (i >= decomposition_) throw CircuitError("decomposition ancilla out of range");
    return QubitId{positions_ + 1 + (has_parallel_ancilla_ ? 1u : 0u) + i};
  }
  std::uint32_t total_qubits() const {
    return positions_ + 1 + (has_parallel_ancilla_ ? 1u : 0u) + decomposition_;
  }

  /// Every ancilla (a and the c block), i.e. qubits expected in |0> at the
  /// start and end of a shift.
  std::vector<QubitId> ancillas() const {
    std::vector<QubitId> out;
    if (auto a = parallel_ancilla()) out.push_back(*a);
    for (std::uint32_t i = 0; i < decomposition_; ++i)
      out.push_back(decomposition_ancilla(i));
    return out;
  }

  RegisterLayout with_decomposition_ancillas(std::uint32_t count) const {
    return RegisterLayout(positions_, has_parallel_ancilla_, count);
  }

  /// True when `other` only appends decomposition ancillas to this layout.
  bool is_prefix_of(const RegisterLayout& other) const {
    return positions_ == other.positions_ &&
           has_parallel_ancilla_ == other.has_parallel_ancilla_ &&
           decomposition_ <= other.decomposition_;
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  std::uint32_t positions_ = 0;
  bool has_parallel_ancilla_ = false;
  std::uint32_t decomposition_ = 0;
};

/// Ordered gate list over a fixed layout.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(RegisterLayout layout) : layout_(layout) {}
  Circuit(RegisterLayout layout, std::vector<Gate> gates) : layout_(layout) {
    gates_.reserve(gates.size());
    for (auto& g : gates) append(std::move(g));
  }

  const RegisterLayout& layout() const { return layout_; }
  std::uint32_t qubit_count() const { return layout_.total_qubits(); }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  Circuit& append(Gate gate) {
    if (gate.max_qubit() >= qubit_count())
      throw CircuitError("gate qubit " + std::to_string(gate.max_qubit()) +
                         " out of range for " + std::to_string(qubit_count()) +
                         "-qubit circuit");
    gates_.push_back(std::move(gate));
    return *this;
  }
  Circuit& append(const Circuit& other) {
    if (other.qubit_count() > qubit_count())
      throw CircuitError("appended circuit is wider than the target");
    for (const auto& g : other.gates_) append(g);
    return *this;
  }

  /// Same gates re-declared on a layout that extends this one.
  Circuit with_layout(const RegisterLayout& wider) const {
    if (!layout_.is_prefix_of(wider))
      throw CircuitError("layout is not an extension of the circuit's layout");
    Circuit out(wider);
    out.gates_ = gates_;
    return out;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  RegisterLayout layout_;
  std::vector<Gate> gates_;
};

inline Circuit append(Circuit circuit, Gate gate) {
  circuit.append(std::move(gate));
  return circuit;
}

/// Sequential composition: `first` runs, then `second`. Layouts must match
/// up to decomposition ancillas; the wider layout wins.
inline Circuit compose(const Circuit& first, const Circuit& second) {
  const auto& la = first.layout();
  const auto& lb = second.layout();
  Circuit out;
  if (la.is_prefix_of(lb)) {
    out = first.with_layout(lb);
  } else if (lb.is_prefix_of(la)) {
    out = first;
  } else {
    throw CircuitError("cannot compose circuits with different layouts");
  }
  out.append(second);
  return out;
}

inline Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.layout());
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    if (auto adj = it->adjoint()) {
      out.append(*adj);
    } else {
      // SX^-1 = SX^3 = X SX
      out.append(Gate::x(it->target().index));
      out.append(*it);
    }
  }
  return out;
}

struct CensusKey {
  GateKind kind;
  std::size_t controls;

  friend constexpr auto operator<=>(const CensusKey&, const CensusKey&) = default;
};

inline std::string census_name(const CensusKey& key) {
  if (key.kind == GateKind::MCX) {
    if (key.controls == 1) return "cx";
    if (key.controls == 2) return "ccx";
    return "c" + std::to_string(key.controls) + "x";
  }
  return to_string(key.kind);
}

/// Per-(kind, control arity) tally.
struct GateCensus {
  std::map<CensusKey, std::size_t> counts;

  std::size_t count(GateKind kind, std::size_t controls = 0) const {
    auto it = counts.find({kind, controls});
    return it == counts.end() ? 0 : it->second;
  }
  std::size_t mcx(std::size_t controls) const { return count(GateKind::MCX, controls); }
  std::size_t cx_total() const { return mcx(1); }
  std::size_t toffoli_total() const { return mcx(2); }
  std::size_t two_qubit_total() const {
    return cx_total() + count(GateKind::CPhase, 1) + count(GateKind::Swap, 0);
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [k, v] : counts) t += v;
    return t;
  }

  GateCensus& operator+=(const GateCensus& other) {
    for (const auto& [k, v] : other.counts) counts[k] += v;
    return *this;
  }
  friend GateCensus operator+(GateCensus a, const GateCensus& b) { return a += b; }
  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

inline GateCensus census(const Circuit& circuit) {
  GateCensus c;
  for (const auto& g : circuit) ++c.counts[{g.kind(), g.control_count()}];
  return c;
}

}  // namespace qshift
