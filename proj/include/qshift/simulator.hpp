#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qshift/circuit.hpp"

namespace qshift {

class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& message) : std::runtime_error(message) {}
};

using Amplitude = std::complex<double>;

/// Hard cap for dense simulation.
inline constexpr std::uint32_t kMaxSimulatedQubits = 24;

/// Dense amplitudes; bit j of an index is the value of qubit j.
class StateVector {
 public:
  explicit StateVector(std::uint32_t qubits, std::uint64_t basis_index = 0)
      : qubits_(qubits) {
    if (qubits > kMaxSimulatedQubits)
      throw SimulationError("statevector limited to " +
                            std::to_string(kMaxSimulatedQubits) + " qubits");
    amplitudes_.assign(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
    if (basis_index >= amplitudes_.size())
      throw SimulationError("basis index out of range");
    amplitudes_[basis_index] = 1.0;
  }

  static StateVector basis(std::uint32_t qubits, std::uint64_t index) {
    return StateVector(qubits, index);
  }
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes) {
    std::uint32_t q = 0;
    while ((std::size_t{1} << q) < amplitudes.size()) ++q;
    if ((std::size_t{1} << q) != amplitudes.size())
      throw SimulationError("amplitude count is not a power of two");
    StateVector s(q);
    s.amplitudes_ = std::move(amplitudes);
    return s;
  }

  std::uint32_t qubit_count() const { return qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
  }

 private:
  std::uint32_t qubits_;
  std::vector<Amplitude> amplitudes_;
};

namespace detail {

struct Matrix2 {
  Amplitude m00, m01, m10, m11;
};

inline Matrix2 single_qubit_matrix(const Gate& g) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g.kind()) {
    case GateKind::X:
    case GateKind::MCX:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H:
      return {r, r, r, -r};
    case GateKind::RZ:
      return {std::exp(-0.5i * g.angle()), 0.0, 0.0, std::exp(0.5i * g.angle())};
    case GateKind::Phase:
    case GateKind::CPhase:
      return {1.0, 0.0, 0.0, std::exp(1.0i * g.angle())};
    case GateKind::SX:
      return {Amplitude(0.5, 0.5), Amplitude(0.5, -0.5), Amplitude(0.5, -0.5),
              Amplitude(0.5, 0.5)};
    case GateKind::Swap:
      break;
  }
  throw SimulationError("no 2x2 matrix for swap");
}

// Value the control bits must have for the gate to fire.
inline void control_masks(const Gate& g, std::uint64_t& mask, std::uint64_t& value) {
  mask = 0;
  value = 0;
  for (const auto& c : g.controls()) {
    const std::uint64_t bit = std::uint64_t{1} << c.qubit.index;
    mask |= bit;
    if (c.polarity == Polarity::positive) value |= bit;
  }
}

}  // namespace detail

/// Applies `gate` in place. O(2^q).
inline void apply_gate(StateVector& state, const Gate& gate) {
  if (gate.max_qubit() >= state.qubit_count())
    throw SimulationError("gate qubit " + std::to_string(gate.max_qubit()) +
                          " out of range for " + std::to_string(state.qubit_count()) +
                          "-qubit state");
  auto amps = state.amplitudes();
  const std::size_t dim = amps.size();
  std::uint64_t cmask = 0;
  std::uint64_t cvalue = 0;
  detail::control_masks(gate, cmask, cvalue);

  if (gate.kind() == GateKind::Swap) {
    const std::uint64_t b0 = std::uint64_t{1} << gate.targets()[0].index;
    const std::uint64_t b1 = std::uint64_t{1} << gate.targets()[1].index;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & b0) && !(i & b1)) std::swap(amps[i], amps[(i ^ b0) | b1]);
    }
    return;
  }

  const std::uint32_t t = gate.target().index;
  const std::uint64_t tbit = std::uint64_t{1} << t;
  const std::uint64_t low = tbit - 1;
  const std::size_t half = dim / 2;

  if (gate.is_x_family()) {
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t i0 = ((k & ~low) << 1) | (k & low);
      if ((i0 & cmask) == cvalue) std::swap(amps[i0], amps[i0 | tbit]);
    }
    return;
  }

  const auto m = detail::single_qubit_matrix(gate);
  const bool diagonal = m.m01 == 0.0 && m.m10 == 0.0;
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = ((k & ~low) << 1) | (k & low);
    if ((i0 & cmask) != cvalue) continue;
    const std::size_t i1 = i0 | tbit;
    if (diagonal) {
      amps[i0] *= m.m00;
      amps[i1] *= m.m11;
    } else {
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i1];
      amps[i0] = m.m00 * a0 + m.m01 * a1;
      amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
  }
}

inline StateVector run(const Circuit& circuit, StateVector state) {
  if (state.qubit_count() != circuit.qubit_count())
    throw SimulationError("state has " + std::to_string(state.qubit_count()) +
                          " qubits, circuit has " +
                          std::to_string(circuit.qubit_count()));
  for (const auto& g : circuit) apply_gate(state, g);
  return state;
}

/// Basis map over the non-ancilla qubits. Index i packs the free qubits in
/// ascending id order; an entry is invalid when the output is not a single
/// basis state with every ancilla back in |0>.
struct PermutationTable {
  std::vector<std::uint64_t> mapping;
  std::vector<bool> valid;
  /// Largest |1 - |amp|| seen over valid entries (0 for X-family tables).
  double max_deviation = 0.0;

  std::size_t size() const { return mapping.size(); }
  bool all_valid() const {
    for (bool v : valid)
      if (!v) return false;
    return true;
  }
  friend bool operator==(const PermutationTable& a, const PermutationTable& b) {
    return a.mapping == b.mapping && a.valid == b.valid;
  }
};

namespace detail {

struct FreeQubits {
  std::vector<std::uint32_t> free;
  std::uint64_t ancilla_mask = 0;

  FreeQubits(std::uint32_t total, std::span<const QubitId> ancillas) {
    for (const auto& a : ancillas) {
      if (a.index >= total) throw SimulationError("ancilla out of range");
      ancilla_mask |= std::uint64_t{1} << a.index;
    }
    for (std::uint32_t q = 0; q < total; ++q)
      if (!(ancilla_mask >> q & 1)) free.push_back(q);
  }
  std::uint64_t expand(std::uint64_t packed) const {
    std::uint64_t full = 0;
    for (std::size_t j = 0; j < free.size(); ++j)
      if (packed >> j & 1) full |= std::uint64_t{1} << free[j];
    return full;
  }
  std::uint64_t compress(std::uint64_t full) const {
    std::uint64_t packed = 0;
    for (std::size_t j = 0; j < free.size(); ++j)
      if (full >> free[j] & 1) packed |= std::uint64_t{1} << j;
    return packed;
  }
};

}  // namespace detail

/// Permutation realized by an X-family circuit, by propagating each basis
/// index through the gates bitwise. Throws for circuits with H, RZ, ...
inline PermutationTable extract_permutation(const Circuit& circuit,
                                            std::span<const QubitId> fixed_ancillas = {}) {
  for (const auto& g : circuit)
    if (!g.is_x_family())
      throw SimulationError(std::string("extract_permutation: non-permutation gate ") +
                            to_string(g.kind()) + "; use basis_action instead");
  const detail::FreeQubits fq(circuit.qubit_count(), fixed_ancillas);
  if (fq.free.size() > kMaxSimulatedQubits)
    throw SimulationError("too many free qubits to tabulate");

  struct Op {
    std::uint64_t mask, value, flip;
  };
  std::vector<Op> ops;
  ops.reserve(circuit.size());
  for (const auto& g : circuit) {
    Op op{};
    detail::control_masks(g, op.mask, op.value);
    op.flip = std::uint64_t{1} << g.target().index;
    ops.push_back(op);
  }

  const std::size_t n = std::size_t{1} << fq.free.size();
  PermutationTable table;
  table.mapping.resize(n);
  table.valid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = fq.expand(i);
    for (const auto& op : ops)
      if ((s & op.mask) == op.value) s ^= op.flip;
    table.valid[i] = (s & fq.ancilla_mask) == 0;
    table.mapping[i] = fq.compress(s);
  }
  return table;
}

/// Statevector version of extract_permutation for circuits that act as a
/// permutation only up to phase (e.g. after Toffoli lowering). An entry is
/// valid when one output amplitude has magnitude within `tol` of 1 and all
/// ancillas are |0>.
inline PermutationTable basis_action(const Circuit& circuit,
                                     std::span<const QubitId> fixed_ancillas = {},
                                     double tol = 1e-10) {
  const detail::FreeQubits fq(circuit.qubit_count(), fixed_ancillas);
  const std::size_t n = std::size_t{1} << fq.free.size();
  PermutationTable table;
  table.mapping.resize(n);
  table.valid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto out = run(circuit, StateVector::basis(circuit.qubit_count(), fq.expand(i)));
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t j = 0; j < out.dimension(); ++j) {
      const double mag = std::abs(out[j]);
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    const double dev = std::abs(1.0 - best_mag);
    table.valid[i] = dev <= tol && (best & fq.ancilla_mask) == 0;
    table.mapping[i] = fq.compress(best);
    if (table.valid[i]) table.max_deviation = std::max(table.max_deviation, dev);
  }
  return table;
}

struct UnitaryComparison {
  bool equal = false;
  double max_deviation = 0.0;
  explicit operator bool() const { return equal; }
};

/// Compares the unitaries of two circuits entrywise up to one global phase.
/// With `fixed_ancillas`, only columns whose ancilla bits are 0 are compared,
/// which checks the isometry seen by ancilla-initialized inputs; the narrower
/// circuit is padded to the wider one's qubit count.
inline UnitaryComparison unitary_equal(const Circuit& lhs, const Circuit& rhs,
                                       double tol,
                                       std::span<const QubitId> fixed_ancillas = {}) {
  const std::uint32_t q = std::max(lhs.qubit_count(), rhs.qubit_count());
  if (fixed_ancillas.empty() && lhs.qubit_count() != rhs.qubit_count())
    throw SimulationError("unitary_equal: qubit counts differ");
  if (q > 14) throw SimulationError("unitary_equal limited to 14 qubits");
  const detail::FreeQubits fq(q, fixed_ancillas);
  const std::size_t columns = std::size_t{1} << fq.free.size();

  auto padded = [q](const Circuit& c) {
    if (c.qubit_count() == q) return c;
    Circuit wide(RegisterLayout::plain(q));
    wide.append(c);
    return wide;
  };
  const Circuit a = padded(lhs);
  const Circuit b = padded(rhs);

  Amplitude phase{0.0, 0.0};
  bool have_phase = false;
  UnitaryComparison result;
  for (std::size_t col = 0; col < columns; ++col) {
    const auto idx = fq.expand(col);
    const auto va = run(a, StateVector::basis(q, idx));
    const auto vb = run(b, StateVector::basis(q, idx));
    if (!have_phase) {
      // align on the first entry of largest magnitude
      std::size_t best = 0;
      double best_mag = -1.0;
      for (std::size_t j = 0; j < va.dimension(); ++j) {
        if (std::abs(va[j]) > best_mag + 1e-12) {
          best_mag = std::abs(va[j]);
          best = j;
        }
      }
      if (std::abs(vb[best]) < 1e-12) {
        result.max_deviation = std::max(result.max_deviation, best_mag);
        phase = 1.0;
      } else {
        phase = va[best] / vb[best];
        phase /= std::abs(phase);
      }
      have_phase = true;
    }
    for (std::size_t j = 0; j < va.dimension(); ++j)
      result.max_deviation = std::max(result.max_deviation, std::abs(va[j] - phase * vb[j]));
  }
  result.equal = result.max_deviation <= tol;
  return result;
}

}  // namespace qshift
