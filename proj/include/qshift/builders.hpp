#pragma once

// Shift circuits on a 2^m-site cycle. All three variants share one coin
// convention: coin |0> increments the position (right shift), coin |1>
// decrements it (left shift).

#include <array>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qshift/circuit.hpp"
#include "qshift/parallel_fixture.hpp"

namespace qshift {

class BuildError : public std::invalid_argument {
 public:
  explicit BuildError(const std::string& message) : std::invalid_argument(message) {}
};

enum class ShiftVariant : std::uint8_t { canonical, qft, parallel };

inline constexpr std::array<ShiftVariant, 3> kAllVariants{
    ShiftVariant::canonical, ShiftVariant::qft, ShiftVariant::parallel};

inline const char* to_string(ShiftVariant v) {
  switch (v) {
    case ShiftVariant::canonical: return "canonical";
    case ShiftVariant::qft: return "qft";
    case ShiftVariant::parallel: return "parallel";
  }
  return "?";
}

inline ShiftVariant parse_variant(std::string_view name) {
  for (auto v : kAllVariants)
    if (name == to_string(v)) return v;
  throw BuildError("unknown shift variant '" + std::string(name) + "'");
}

/// Smallest position-register size each builder accepts.
inline std::uint32_t min_position_qubits(ShiftVariant v) {
  return v == ShiftVariant::parallel ? 4 : 1;
}

namespace detail {

inline void require_m(ShiftVariant v, std::uint32_t m) {
  const auto lo = min_position_qubits(v);
  if (m < lo)
    throw BuildError(std::string(to_string(v)) + " shift: m >= " + std::to_string(lo) +
                     " required (got " + std::to_string(m) + ")");
  // lowered circuits use about 2m qubits; gate supports are 64-bit masks
  if (m > 31) throw BuildError("m > 31 not supported");
}

// Cascade of MCX gates, longest first: target t fires when every lower
// position bit equals `carry_bit` (1 for increment, 0 for decrement).
inline void append_cascade(Circuit& c, std::uint32_t m, Control coin, bool carry_bit) {
  for (std::uint32_t t = m; t-- > 0;) {
    std::vector<Control> controls;
    for (std::uint32_t j = 0; j < t; ++j)
      controls.push_back(carry_bit ? pos(j) : neg(j));
    controls.push_back(coin);
    c.append(Gate::mcx(std::move(controls), t));
  }
}

}  // namespace detail

/// Coin-controlled increment cascade followed by the coin-controlled
/// decrement cascade with open controls.
inline Circuit build_canonical(std::uint32_t m) {
  detail::require_m(ShiftVariant::canonical, m);
  const RegisterLayout layout(m, false);
  const auto coin = layout.coin().index;
  Circuit c(layout);
  detail::append_cascade(c, m, neg(coin), true);
  detail::append_cascade(c, m, pos(coin), false);
  return c;
}

/// Fourier transform on the position register without the final bit
/// reversal: qubit i ends up carrying the phase factor of output bit m-1-i.
inline Circuit qft_no_swap(const RegisterLayout& layout) {
  const auto m = layout.position_count();
  Circuit c(layout);
  for (std::uint32_t i = m; i-- > 0;) {
    c.append(Gate::h(i));
    for (std::uint32_t j = i; j-- > 0;)
      c.append(Gate::cphase(pos(j), i, std::numbers::pi / double(std::uint64_t{1} << (i - j))));
  }
  return c;
}

/// S+ = F^-1 P F with the P layer steered by the coin. On qubit i (bit
/// m-1-i of the Fourier index) the increment phase is pi / 2^i; it is
/// applied unconditionally and a coin-controlled phase of twice the negated
/// angle turns it into the decrement phase when the coin is |1>.
/// Two-qubit gates: m(m-1) in the transforms plus m in the P layer.
inline Circuit build_qft(std::uint32_t m) {
  detail::require_m(ShiftVariant::qft, m);
  const RegisterLayout layout(m, false);
  const auto coin = layout.coin().index;
  const Circuit f = qft_no_swap(layout);

  Circuit c(layout);
  c.append(f);
  for (std::uint32_t i = 0; i < m; ++i) {
    const double angle = std::numbers::pi / double(std::uint64_t{1} << i);
    c.append(Gate::phase(i, angle));
    c.append(Gate::cphase(pos(coin), i, -2.0 * angle));
  }
  c.append(inverse(f));
  return c;
}

/// Stages of the parallel shift, in execution order.
struct ParallelStages {
  Circuit decompose;   // D
  Circuit rearrange;   // R
  Circuit invert;      // X on q0
  Circuit variable;    // carry propagation into q4..q_{m-1}; empty for m = 4
  Circuit recombine;   // D^-1 and the reset of a
};

namespace detail {

inline std::uint32_t resolve(fixture::Role role, const RegisterLayout& layout) {
  using fixture::Role;
  switch (role) {
    case Role::q0: return 0;
    case Role::q1: return 1;
    case Role::q2: return 2;
    case Role::q3: return 3;
    case Role::coin: return layout.coin().index;
    case Role::anc: return layout.parallel_ancilla()->index;
  }
  return 0;
}

template <std::size_t N>
void append_fixture(Circuit& c, const std::array<fixture::FixtureGate, N>& gates) {
  for (const auto& fg : gates) {
    std::vector<Control> controls;
    for (std::uint8_t i = 0; i < fg.control_count; ++i) {
      const auto& w = fg.controls[i];
      const auto q = resolve(w.role, c.layout());
      controls.push_back(w.negative ? neg(q) : pos(q));
    }
    c.append(Gate::mcx(std::move(controls), resolve(fg.target, c.layout())));
  }
}

}  // namespace detail

/// The variable part for m >= 5: every position bit below the new target is
/// conditionally flipped on coin |0>, so one all-positive MCX per added qubit
/// carries (or borrows) into it.
inline Circuit parallel_variable_part(const RegisterLayout& layout) {
  const auto m = layout.position_count();
  const auto coin = layout.coin().index;
  Circuit c(layout);
  if (m < 5) return c;
  for (std::uint32_t t = 4; t < m; ++t) {
    if (t == 4) {
      for (std::uint32_t i = 0; i < 4; ++i) c.append(Gate::cx(neg(coin), i));
    } else {
      c.append(Gate::cx(neg(coin), t - 1));
    }
    std::vector<Control> controls;
    for (std::uint32_t j = 0; j < t; ++j) controls.push_back(pos(j));
    c.append(Gate::mcx(std::move(controls), t));
  }
  for (std::uint32_t i = m - 1; i-- > 0;) c.append(Gate::cx(neg(coin), i));
  return c;
}

inline ParallelStages parallel_stages(std::uint32_t m) {
  detail::require_m(ShiftVariant::parallel, m);
  const RegisterLayout layout(m, true);
  ParallelStages s{Circuit(layout), Circuit(layout), Circuit(layout), Circuit(layout),
                   Circuit(layout)};
  detail::append_fixture(s.decompose, fixture::kDecompose);
  detail::append_fixture(s.rearrange, fixture::kRearrange);
  s.invert.append(Gate::x(detail::resolve(fixture::kInverterTarget, layout)));
  s.variable = parallel_variable_part(layout);
  detail::append_fixture(s.recombine, fixture::kRecombine);
  s.recombine.append(Gate::x(detail::resolve(fixture::kAncillaReset, layout)));
  return s;
}

/// D^-1 X R D plus the variable part, with one ancilla `a` above the coin.
inline Circuit build_parallel(std::uint32_t m) {
  auto s = parallel_stages(m);
  Circuit c = s.decompose;
  c.append(s.rearrange).append(s.invert).append(s.variable).append(s.recombine);
  return c;
}

inline Circuit build_shift(ShiftVariant variant, std::uint32_t m) {
  switch (variant) {
    case ShiftVariant::canonical: return build_canonical(m);
    case ShiftVariant::qft: return build_qft(m);
    case ShiftVariant::parallel: return build_parallel(m);
  }
  throw BuildError("unknown shift variant");
}

}  // namespace qshift
