#include <gtest/gtest.h>

#include <random>

#include "qshift/builders.hpp"
#include "qshift/circuit.hpp"
#include "qshift/simulator.hpp"

using namespace qshift;

TEST(Gate, FactoriesNormalizeArity) {
  EXPECT_EQ(Gate::mcx({}, 0), Gate::x(0));
  const auto cx = Gate::cx(pos(2), 0);
  EXPECT_EQ(cx.kind(), GateKind::MCX);
  EXPECT_EQ(cx.control_count(), 1u);
  // controls are kept sorted so equal gates compare equal
  EXPECT_EQ(Gate::ccx(pos(3), neg(1), 0), Gate::ccx(neg(1), pos(3), 0));
}

TEST(Gate, RejectsDuplicatedQubits) {
  EXPECT_THROW(Gate::cx(1, 1), CircuitError);
  EXPECT_THROW(Gate::ccx(pos(1), neg(1), 0), CircuitError);
  EXPECT_THROW(Gate::swap(2, 2), CircuitError);
  EXPECT_THROW(Gate::x(64), CircuitError);
}

TEST(Gate, RejectsNonFiniteAngles) {
  EXPECT_THROW(Gate::rz(0, std::numeric_limits<double>::infinity()), CircuitError);
  EXPECT_THROW(Gate::phase(0, std::nan("")), CircuitError);
}

TEST(Gate, SupportAndFamily) {
  const auto g = Gate::ccx(pos(4), neg(1), 2);
  EXPECT_EQ(g.support_mask(), (1u << 4) | (1u << 1) | (1u << 2));
  EXPECT_EQ(g.max_qubit(), 4u);
  EXPECT_TRUE(g.is_x_family());
  EXPECT_TRUE(g.has_negative_control());
  EXPECT_TRUE(g.is_self_inverse());
  EXPECT_FALSE(Gate::rz(0, 0.3).is_self_inverse());
  EXPECT_FALSE(Gate::h(0).is_x_family());
}

TEST(Gate, Adjoint) {
  EXPECT_EQ(Gate::rz(0, 0.7).adjoint(), Gate::rz(0, -0.7));
  EXPECT_EQ(Gate::cphase(neg(1), 0, 0.25).adjoint(), Gate::cphase(neg(1), 0, -0.25));
  EXPECT_EQ(Gate::h(3).adjoint(), Gate::h(3));
  EXPECT_FALSE(Gate::sx(0).adjoint().has_value());
}

TEST(Circuit, AppendChecksLayout) {
  Circuit c(RegisterLayout::plain(5));
  c.append(Gate::x(0));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_THROW(c.append(Gate::x(99)), CircuitError);
  EXPECT_EQ(c.size(), 1u);
}

TEST(Circuit, FirstParallelGateMatchesHandWrittenCx) {
  // q0 -> a, with a at index m + 1
  Circuit c(RegisterLayout(4, true));
  c.append(Gate::cx(pos(0), 5));
  EXPECT_EQ(build_parallel(4)[0], c[0]);
}

TEST(Circuit, InverseExamples) {
  Circuit a(RegisterLayout::plain(2));
  a.append(Gate::x(0));
  EXPECT_EQ(inverse(a)[0], Gate::x(0));

  Circuit b(RegisterLayout::plain(2));
  b.append(Gate::h(0)).append(Gate::cx(0, 1));
  const auto ib = inverse(b);
  ASSERT_EQ(ib.size(), 2u);
  EXPECT_EQ(ib[0], Gate::cx(0, 1));
  EXPECT_EQ(ib[1], Gate::h(0));

  Circuit r(RegisterLayout::plain(1));
  r.append(Gate::rz(0, 0.7));
  EXPECT_EQ(inverse(r)[0], Gate::rz(0, -0.7));
}

TEST(Circuit, ComposeThenInverseIsIdentity) {
  for (auto v : kAllVariants) {
    const auto c = build_shift(v, 4);
    const auto id = compose(c, inverse(c));
    const auto cmp = unitary_equal(id, Circuit(c.layout()), 1e-12);
    EXPECT_TRUE(cmp.equal) << to_string(v) << " deviation " << cmp.max_deviation;
  }
}

TEST(Circuit, InverseOfSxUsesX) {
  Circuit c(RegisterLayout::plain(1));
  c.append(Gate::sx(0));
  EXPECT_TRUE(unitary_equal(compose(c, inverse(c)), Circuit(c.layout()), 1e-12).equal);
}

TEST(Layout, ContiguousIds) {
  const RegisterLayout l(5, true, 3);
  EXPECT_EQ(l.position(4).index, 4u);
  EXPECT_EQ(l.coin().index, 5u);
  EXPECT_EQ(l.parallel_ancilla()->index, 6u);
  EXPECT_EQ(l.decomposition_ancilla(0).index, 7u);
  EXPECT_EQ(l.total_qubits(), 10u);
  EXPECT_EQ(l.working_count(), 6u);
  EXPECT_EQ(l.ancillas().size(), 4u);
  EXPECT_THROW(l.decomposition_ancilla(3), CircuitError);
  EXPECT_TRUE(RegisterLayout(5, true).is_prefix_of(l));
  EXPECT_FALSE(l.is_prefix_of(RegisterLayout(5, true)));
}

TEST(Census, Empty) {
  const auto c = census(Circuit(RegisterLayout::plain(3)));
  EXPECT_EQ(c.total(), 0u);
  EXPECT_EQ(c.cx_total(), 0u);
  EXPECT_EQ(c.two_qubit_total(), 0u);
}

TEST(Census, ParallelConstantPart) {
  const auto s = parallel_stages(4);
  Circuit constant = s.decompose;
  constant.append(s.rearrange).append(s.recombine);
  auto g = census(constant);
  // the two lone X gates are not part of the quoted tally
  EXPECT_EQ(g.count(GateKind::X), 1u);
  EXPECT_EQ(g.cx_total(), 5u);
  EXPECT_EQ(g.mcx(2), 4u);
  EXPECT_EQ(g.mcx(3), 3u);
}

TEST(Census, CanonicalBeforeLowering) {
  // two cascades, each with one gate of every arity 1..m plus an X
  // controlled by the coin alone
  const auto g = census(build_canonical(4));
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(g.mcx(k), 2u) << k;
  EXPECT_EQ(g.total(), 8u);
}

TEST(Census, AdditiveUnderCompose) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit a(RegisterLayout::plain(4)), b(RegisterLayout::plain(4));
    for (int i = 0; i < 10; ++i) {
      const auto q = static_cast<std::uint32_t>(rng() % 4);
      const auto t = static_cast<std::uint32_t>((q + 1 + rng() % 3) % 4);
      (i % 2 ? a : b).append(rng() % 2 ? Gate::cx(q, t) : Gate::h(q));
    }
    EXPECT_EQ(census(compose(a, b)), census(a) + census(b));
  }
}

TEST(Census, TwoQubitTotalIncludesPhaseAndSwap) {
  Circuit c(RegisterLayout::plain(3));
  c.append(Gate::cx(0, 1)).append(Gate::cphase(pos(0), 2, 0.5)).append(Gate::swap(1, 2));
  const auto g = census(c);
  EXPECT_EQ(g.cx_total(), 1u);
  EXPECT_EQ(g.two_qubit_total(), 3u);
  EXPECT_GE(g.two_qubit_total(), g.cx_total());
}
