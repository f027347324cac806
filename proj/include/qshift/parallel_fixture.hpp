#pragma once

// Constant part of the parallel shift, transcribed column by column from the
// five-working-qubit circuit (position q0..q3, coin q4, ancilla a). Qubits are
// named by role so the table holds for every register size; position bits
// above q3 are only touched by the generated variable part.

#include <array>
#include <cstdint>

namespace qshift::fixture {

enum class Role : std::uint8_t { q0, q1, q2, q3, coin, anc };

struct Wire {
  Role role;
  bool negative = false;
};

struct FixtureGate {
  Role target;
  std::uint8_t control_count;
  std::array<Wire, 3> controls;
};

inline constexpr Wire on(Role r) { return {r, false}; }
inline constexpr Wire off(Role r) { return {r, true}; }

using enum Role;

// D: even/odd split into a, then exchange parity on the coin-|1> half.
inline constexpr std::array<FixtureGate, 2> kDecompose{{
    {anc, 1, {on(q0)}},
    {anc, 1, {on(coin)}},
}};

// R: the CX plus seven multi-controlled X gates, columns 3..10.
inline constexpr std::array<FixtureGate, 8> kRearrange{{
    {q1, 1, {on(anc)}},
    {q1, 2, {off(coin), on(anc)}},
    {q2, 2, {on(coin), on(anc)}},
    {q3, 3, {on(q1), on(q2), on(anc)}},
    {q2, 2, {on(coin), on(anc)}},
    {q1, 2, {off(coin), on(anc)}},
    {q2, 3, {off(q1), off(coin), on(anc)}},
    {q2, 3, {on(q1), on(coin), on(anc)}},
}};

// Inverter on the least significant position qubit.
inline constexpr Role kInverterTarget = q0;

// D^-1 followed by the trailing X on a that restores it to |0>.
inline constexpr std::array<FixtureGate, 2> kRecombine{{
    {anc, 1, {on(coin)}},
    {anc, 1, {on(q0)}},
}};
inline constexpr Role kAncillaReset = anc;

}  // namespace qshift::fixture
