#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qshift/builders.hpp"
#include "qshift/pipeline.hpp"
#include "qshift/qasm.hpp"
#include "qshift/simulator.hpp"
#include "qshift/verify.hpp"

using namespace qshift;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Export, SingleX) {
  Circuit c(RegisterLayout::plain(1));
  c.append(Gate::x(0));
  EXPECT_EQ(export_text(c), "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[1] coin;\nx coin[0];\n");
}

TEST(Export, GoldenParallelM4) {
  // frozen transcription of the constant part; review diffs by hand
  EXPECT_EQ(export_text(build_parallel(4)), slurp(QSHIFT_TEST_DATA "/parallel_m4.qasm"));
}

TEST(Export, Deterministic) {
  for (auto v : kAllVariants) EXPECT_EQ(export_text(build_shift(v, 6)), export_text(build_shift(v, 6)));
}

TEST(RoundTrip, EveryVariantIsIdentical) {
  for (auto v : kAllVariants) {
    for (std::uint32_t m = 4; m <= 6; ++m) {
      const auto c = build_shift(v, m);
      const auto back = import_text(export_text(c));
      EXPECT_EQ(back.layout().total_qubits(), c.layout().total_qubits());
      EXPECT_EQ(census(back), census(c));
      ASSERT_EQ(back.size(), c.size());
      for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(back[i], c[i]) << to_string(v) << i;
    }
  }
}

TEST(RoundTrip, LoweredCircuitsPreserveUnitary) {
  const auto r = run_pipeline(build_shift(ShiftVariant::qft, 4), reference_pipeline());
  for (auto ver : {QasmVersion::v2, QasmVersion::v3}) {
    const auto back = import_text(export_text(r.circuit, {ver, false}));
    EXPECT_EQ(census(back).cx_total(), census(r.circuit).cx_total());
    EXPECT_TRUE(unitary_equal(back, r.circuit, 1e-12).equal);
  }
}

TEST(RoundTrip, RandomCircuits) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> angle(-7.0, 7.0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint32_t q = 3 + trial % 6;
    Circuit c(RegisterLayout::plain(q));
    for (int i = 0; i < 15; ++i) {
      const auto t = static_cast<std::uint32_t>(rng() % q);
      const auto o = (t + 1 + rng() % (q - 1)) % q;
      switch (rng() % 6) {
        case 0: c.append(Gate::h(t)); break;
        case 1: c.append(Gate::rz(t, angle(rng))); break;
        case 2: c.append(Gate::sx(t)); break;
        case 3: c.append(Gate::swap(t, static_cast<std::uint32_t>(o))); break;
        case 4: c.append(Gate::cphase(rng() % 2 ? pos(o) : neg(o), t, angle(rng))); break;
        default: {
          std::vector<Control> ctl;
          for (std::uint32_t j = 0; j < q; ++j)
            if (j != t && rng() % 2) ctl.push_back(rng() % 2 ? pos(j) : neg(j));
          c.append(Gate::mcx(ctl, t));
        }
      }
    }
    const auto back = import_text(export_text(c));
    EXPECT_EQ(census(back), census(c));
    if (q <= 8) {
      EXPECT_TRUE(unitary_equal(back, c, 1e-12).equal) << trial;
    }
  }
}

TEST(Export, ExpandedNegativeControls) {
  const auto c = build_parallel(4);
  const auto text = export_text(c, {QasmVersion::v3, true});
  EXPECT_EQ(text.find("negctrl"), std::string::npos);
  const auto back = import_text(text);
  for (const auto& g : back) EXPECT_FALSE(g.has_negative_control());
  EXPECT_TRUE(unitary_equal(back, c, 1e-12).equal);
}

TEST(Export, Version2) {
  Circuit c(RegisterLayout::plain(3));
  c.append(Gate::cx(neg(0), 1)).append(Gate::cphase(pos(0), 2, 0.5)).append(Gate::phase(1, 0.25));
  const auto text = export_text(c, {QasmVersion::v2, false});
  EXPECT_NE(text.find("OPENQASM 2.0;"), std::string::npos);
  EXPECT_NE(text.find("qreg p[2];"), std::string::npos);
  EXPECT_NE(text.find("cu1("), std::string::npos);
  EXPECT_NE(text.find("u1("), std::string::npos);
  EXPECT_TRUE(unitary_equal(import_text(text), c, 1e-12).equal);

  EXPECT_THROW(export_text(build_parallel(4), {QasmVersion::v2, false}), QasmError);
}

TEST(Import, AngleExpressions) {
  const auto c = import_text(
      "OPENQASM 3.0;\nqubit[2] q;\nrz(pi/4) q[0];\nrz(-3*pi/2 + 0.5) q[1]; // tail\n"
      "/* block\n comment */ p(2*(pi - 1)) q[0];\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0].angle(), std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(c[1].angle(), -3 * std::numbers::pi / 2 + 0.5);
  EXPECT_DOUBLE_EQ(c[2].angle(), 2 * (std::numbers::pi - 1));
}

TEST(Import, Errors) {
  EXPECT_THROW(import_text("qubit[2] q;\nx q[0];\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\nx q[0]\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\nfoo q[0];\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\nx q[5];\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\ncx q[0], q[0];\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\nrz(pi/) q[0];\n"), QasmError);
  EXPECT_THROW(import_text("OPENQASM 3.0;\nqubit[2] q;\n/* open\nx q[0];\n"), QasmError);
  try {
    import_text("OPENQASM 3.0;\nqubit[2] q;\nx q[0];\nbogus q[1];\n");
  } catch (const QasmError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}
