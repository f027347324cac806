#include <gtest/gtest.h>

#include "qshift/builders.hpp"
#include "qshift/pipeline.hpp"
#include "qshift/simulator.hpp"
#include "qshift/verify.hpp"

using namespace qshift;

TEST(Pipeline, ParseReferenceFile) {
  const auto p = load_pipeline(QSHIFT_PIPELINES "/reference.pipeline");
  EXPECT_EQ(p, reference_pipeline());
}

TEST(Pipeline, ParseOptionsAndComments) {
  const auto p = parse_pipeline(
      "# comment\n\nlower_mcx auto_extend=false\n  cancel_adjacent window=8  # trailing\n");
  ASSERT_EQ(p.stages.size(), 2u);
  EXPECT_EQ(p.stages[0].options.at("auto_extend"), "false");
  EXPECT_EQ(p.stages[1].options.at("window"), "8");
  EXPECT_EQ(parse_pipeline(format_pipeline(p)), p);
}

TEST(Pipeline, Rejects) {
  EXPECT_THROW(parse_pipeline("lower_everything\n"), PassError);
  EXPECT_THROW(parse_pipeline("cancel_adjacent window=-1\n"), PassError);
  EXPECT_THROW(parse_pipeline("cancel_adjacent depth=3\n"), PassError);
  EXPECT_THROW(parse_pipeline("lower_toffoli fast=true\n"), PassError);
  EXPECT_THROW(parse_pipeline("lower_mcx auto_extend\n"), PassError);
  EXPECT_THROW(load_pipeline("/nonexistent/pipeline"), PassError);
}

TEST(Pipeline, EmptyIsIdentity) {
  const auto c = build_parallel(4);
  const auto r = run_pipeline(c, PassPipeline{});
  EXPECT_TRUE(r.log.empty());
  ASSERT_EQ(r.circuit.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(r.circuit[i], c[i]);
}

TEST(Pipeline, LogsEveryStage) {
  const auto r = run_pipeline(build_parallel(5), reference_pipeline());
  ASSERT_EQ(r.log.size(), reference_pipeline().stages.size());
  EXPECT_EQ(r.log.front().stage, "lower_mcx");
  EXPECT_EQ(r.log.back().census, census(r.circuit));
}

TEST(Pipeline, ReferenceBasis) {
  for (auto v : kAllVariants) {
    const auto r = run_pipeline(build_shift(v, 5), reference_pipeline());
    for (const auto& g : r.circuit) {
      EXPECT_LE(g.control_count(), 1u);
      EXPECT_FALSE(g.has_negative_control());
      EXPECT_NE(g.kind(), GateKind::CPhase);
    }
  }
}

TEST(Pipeline, ReferencePreservesShift) {
  for (std::uint32_t m = 4; m <= 7; ++m) {
    const auto r = run_pipeline(build_parallel(m), reference_pipeline());
    const auto rep = check_shift(r.circuit);
    EXPECT_TRUE(rep.passed) << m << " deviation " << rep.max_deviation;
    EXPECT_LT(rep.max_deviation, 1e-10);
  }
}

TEST(Pipeline, SixWorkingQubits) {
  EXPECT_EQ(census(run_pipeline(build_parallel(5), reference_pipeline()).circuit).cx_total(), 149u);
}

TEST(Pipeline, AutoExtendOff) {
  EXPECT_THROW(run_pipeline(build_parallel(5), parse_pipeline("lower_mcx auto_extend=false\n")),
               PassError);
}
