#include <gtest/gtest.h>

#include "qshift/builders.hpp"
#include "qshift/simulator.hpp"
#include "qshift/verify.hpp"

using namespace qshift;

namespace {

// Images of every working basis state, computed by the statevector so the
// QFT variant goes through the same path as the others.
std::vector<std::uint64_t> action(const Circuit& c) {
  const auto t = basis_action(c, c.layout().ancillas(), 1e-10);
  EXPECT_TRUE(t.all_valid());
  return t.mapping;
}

}  // namespace

TEST(Variant, ParseAndName) {
  for (auto v : kAllVariants) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("diagonal"), BuildError);
}

TEST(Builders, RejectOutOfRange) {
  EXPECT_THROW(build_canonical(0), BuildError);
  EXPECT_THROW(build_qft(0), BuildError);
  EXPECT_THROW(build_parallel(3), BuildError);
  EXPECT_THROW(build_shift(ShiftVariant::parallel, 3), BuildError);
  try {
    build_parallel(3);
  } catch (const BuildError& e) {
    EXPECT_NE(std::string(e.what()).find("m >= 4 required"), std::string::npos);
  }
}

TEST(Builders, Layouts) {
  const auto c = build_canonical(5);
  EXPECT_EQ(c.qubit_count(), 6u);
  EXPECT_TRUE(c.layout().ancillas().empty());
  const auto p = build_parallel(5);
  EXPECT_EQ(p.qubit_count(), 7u);
  EXPECT_TRUE(p.layout().parallel_ancilla().has_value());
}

TEST(Builders, TwoSiteShiftIsX) {
  for (auto v : {ShiftVariant::canonical, ShiftVariant::qft}) {
    const auto m = action(build_shift(v, 1));
    EXPECT_EQ(m, (std::vector<std::uint64_t>{1, 0, 3, 2})) << to_string(v);
  }
}

TEST(Builders, CanonicalStructure) {
  const auto c = build_canonical(1);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], Gate::cx(neg(1), 0));
  EXPECT_EQ(c[1], Gate::cx(pos(1), 0));
}

TEST(Builders, QftSingleQubit) {
  const auto c = build_qft(1);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].kind(), GateKind::H);
  EXPECT_EQ(c[3].kind(), GateKind::H);
  EXPECT_EQ(c[2].kind(), GateKind::CPhase);
}

TEST(Builders, QftTwoQubitGatesAreMSquared) {
  for (std::uint32_t m = 1; m <= 12; ++m)
    EXPECT_EQ(census(build_qft(m)).two_qubit_total(), m * m) << m;
}

TEST(Builders, AllVariantsAgree) {
  for (std::uint32_t m = 4; m <= 6; ++m) {
    const auto ref = action(build_canonical(m));
    EXPECT_EQ(action(build_qft(m)), ref) << m;
    EXPECT_EQ(action(build_parallel(m)), ref) << m;
  }
}

TEST(Builders, ShiftSemanticsAndPeriodicity) {
  for (std::uint32_t m = 4; m <= 8; ++m) {
    for (auto v : kAllVariants) {
      if (v == ShiftVariant::qft && m > 7) continue;  // statevector; covered to 7
      const auto r = check_shift(build_shift(v, m));
      EXPECT_TRUE(r.passed) << to_string(v) << " m=" << m;
    }
    const std::uint64_t n = std::uint64_t{1} << m;
    const auto t = extract_permutation(build_parallel(m), build_parallel(m).layout().ancillas());
    EXPECT_EQ(t.mapping[n - 1], 0u);
    EXPECT_EQ(t.mapping[n], (n - 1) | n);
  }
}

TEST(Builders, ParallelExamplesM4) {
  const auto c = build_parallel(4);
  const auto t = extract_permutation(c, c.layout().ancillas());
  EXPECT_EQ(t.mapping[2], 3u);
  EXPECT_EQ(t.mapping[2 | 16], 1u | 16);
}

TEST(Builders, DecompositionSplitsParity) {
  // after D, even sites carry a = 0 and odd sites a = 1 (coin |0>)
  const auto s = parallel_stages(4);
  const auto l = s.decompose.layout();
  const auto a = l.parallel_ancilla()->index;
  for (std::uint64_t k = 0; k < 16; ++k) {
    const auto out = run(s.decompose, StateVector::basis(l.total_qubits(), k));
    const std::uint64_t want = k | ((k & 1) << a);
    EXPECT_EQ(out[want], Amplitude(1.0)) << k;
  }
}

TEST(Builders, CoinInvertedShiftUndoes) {
  for (std::uint32_t m = 4; m <= 6; ++m) {
    const auto c = build_parallel(m);
    Circuit flipped(c.layout());
    const auto coin = c.layout().coin().index;
    flipped.append(Gate::x(coin)).append(c).append(Gate::x(coin));
    const auto t = extract_permutation(compose(c, flipped), c.layout().ancillas());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(t.mapping[i], i);
  }
}

TEST(Builders, ParallelGrowthDelta) {
  // m=4 -> 5 adds one C^4X and eight CX; afterwards one wider MCX and two CX
  // per qubit
  const auto d45 = census(build_parallel(5));
  const auto d4 = census(build_parallel(4));
  EXPECT_EQ(d45.mcx(4) - d4.mcx(4), 1u);
  EXPECT_EQ(d45.cx_total() - d4.cx_total(), 8u);
  EXPECT_EQ(d45.total() - d4.total(), 9u);
  for (std::uint32_t m = 5; m < 10; ++m) {
    const auto a = census(build_parallel(m));
    const auto b = census(build_parallel(m + 1));
    EXPECT_EQ(b.mcx(m), 1u);
    EXPECT_EQ(a.mcx(m), 0u);
    EXPECT_EQ(b.cx_total() - a.cx_total(), 2u);
    EXPECT_EQ(b.total() - a.total(), 3u);
  }
}

TEST(Builders, VariablePartCxCount) {
  // 2(n - 2) CX with n = m + 1
  for (std::uint32_t m = 5; m <= 10; ++m) {
    const auto s = parallel_stages(m);
    EXPECT_EQ(census(s.variable).cx_total(), 2 * (m - 1)) << m;
  }
  EXPECT_TRUE(parallel_stages(4).variable.empty());
}
