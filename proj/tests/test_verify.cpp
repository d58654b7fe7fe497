#include <gtest/gtest.h>

#include <random>

#include "dvp/verify.hpp"
#include "support/oracles.hpp"

namespace {

using namespace dvp;
namespace oracle = dvp::testing;

TEST(RandomStates, PlasticAndElasticSamples) {
  const MaterialParams p = oracle::table1();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const verify::PlasticSample plastic = verify::random_plastic_state(p, rng);
    const DerivedQuantities d = compute_derived(p, plastic.state, plastic.eps);
    EXPECT_GT(d.f, 0.0);
    EXPECT_LT(d.alpha, 1.0);
    const verify::PlasticSample elastic = verify::random_elastic_state(p, rng);
    EXPECT_EQ(compute_derived(p, elastic.state, elastic.eps).f, 0.0);
  }
}

TEST(RandomStates, ThetaRegimes) {
  const MaterialParams p = oracle::table1();
  std::mt19937_64 rng(2);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < 100; ++i) {
    const verify::PlasticSample a = verify::random_plastic_state(p, rng, verify::ThetaRegime::NearZero);
    EXPECT_LT(compute_derived(p, a.state, a.eps).theta, 1e-3);
    const verify::PlasticSample b = verify::random_plastic_state(p, rng, verify::ThetaRegime::NearPi);
    EXPECT_GT(compute_derived(p, b.state, b.eps).theta, pi - 1e-3);
  }
}

TEST(RandomPrograms, AreValid) {
  const MaterialParams p = oracle::table1();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Program prog = verify::random_program(p, rng);
    EXPECT_NO_THROW(validate(prog));
    EXPECT_GE(prog.size(), 2u);
    EXPECT_LE(prog.size(), 4u);
  }
}

TEST(Gradcheck, EggPasses) {
  const verify::GradcheckReport r = verify::gradcheck(oracle::table1(), 200, 7, 1e-5);
  EXPECT_TRUE(r.passed) << r.max_rel_error;
  EXPECT_EQ(r.samples, 200u);
  EXPECT_LT(r.max_norm_deviation, 1e-10);
}

TEST(Gradcheck, ReportsFailureAtImpossibleTolerance) {
  const verify::GradcheckReport r = verify::gradcheck(oracle::table1(), 20, 7, 1e-15);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_rel_error, 1e-15);
}

TEST(ThermoAudit, SmallBatchPasses) {
  const verify::AuditReport r = verify::thermo_audit(oracle::table1(), 20, 11);
  EXPECT_TRUE(r.passed) << r.first_violation;
  EXPECT_EQ(r.programs, 20u);
  EXPECT_GT(r.plastic_steps, 0u);
  EXPECT_EQ(r.violations, 0u);
}

}  // namespace
