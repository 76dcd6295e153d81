#include <gtest/gtest.h>

#include "majorlab/theorem_suite.hpp"

using namespace majorlab;

namespace {

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.trials = 25;
  cfg.n = 3;
  cfg.m = 2;
  cfg.l = 3;
  cfg.seed = 5;
  return cfg;
}

MapInstance identity_instance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return {PsdMatrix(a), PsdMatrix(b), KrausMap::identity(a.rows()),
          KrausMap::identity(b.rows())};
}

ComplexMatrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

class EverySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySuite, SmallRunHasNoFailures) {
  const SuiteResult r = run_suite(GetParam(), small_config());
  EXPECT_EQ(r.failures, 0) << r.worst_detail;
  EXPECT_EQ(r.side_failures, 0);
  EXPECT_EQ(r.witness_failures, 0);
  // witnesses count as trials but carry no margin entry
  EXPECT_EQ(r.trials, 25 + r.witnesses);
  EXPECT_EQ(r.margins.size(), 25u);
}

TEST_P(EverySuite, WitnessesSitOnEquality) {
  const SuiteConfig cfg = small_config();
  for (const TrialInstance& w : witness_instances(GetParam(), cfg)) {
    const TrialOutcome o = evaluate(w);
    EXPECT_NE(classify(w, o, cfg.tol), TrialStatus::fail) << w.variant << " " << o.detail;
  }
}

TEST_P(EverySuite, InstancesRoundTripThroughJson) {
  const SuiteConfig cfg = small_config();
  for (std::uint64_t i = 0; i < 5; ++i) {
    const TrialInstance inst = generate_trial(GetParam(), cfg, i);
    const Json j = instance_to_json(inst);
    const TrialInstance back = instance_from_json(Json::parse(j.dump()));
    EXPECT_EQ(instance_to_json(back).dump(), j.dump());
    const TrialOutcome a = evaluate(inst), b = evaluate(back);
    if (std::isfinite(a.margin)) EXPECT_NEAR(a.margin, b.margin, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Suites, EverySuite, ::testing::ValuesIn(suite_ids()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (c == '-' || c == '.') c = '_';
                           return s;
                         });

TEST(Suites, DeterministicAcrossJobCounts) {
  SuiteConfig cfg = small_config();
  const Json a = result_to_json(run_suite("thm-3.1", cfg));
  cfg.jobs = 3;
  const Json b = result_to_json(run_suite("thm-3.1", cfg));
  EXPECT_EQ(a.dump(), b.dump());
  cfg.seed = 6;
  EXPECT_NE(a.dump(), result_to_json(run_suite("thm-3.1", cfg)).dump());
}

TEST(Suites, ConfigValidation) {
  SuiteConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = SuiteConfig{};
  cfg.l = 7;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = SuiteConfig{};
  cfg.singular_fraction = 1.5;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = SuiteConfig{};
  cfg.kernels = {"nope"};
  EXPECT_THROW(validate(cfg), DomainError);
  EXPECT_FALSE(is_suite_id("nope"));
  EXPECT_EQ(suite_ids().size(), 14u);
}

TEST(Suites, MalformedInstanceNamesField) {
  Json j = instance_to_json(generate_trial("thm-3.1", small_config(), 0));
  j["a"]["rows"] = "x";
  try {
    instance_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(e.field().find("instance.a"), std::string::npos) << e.field();
  }
}

TEST(Checks, PairSpectrumIdentityMaps) {
  // commuting diagonals: lambda(A^p B^p) entrywise
  const MapInstance in = identity_instance(diag({4, 1}), diag({1, 9}));
  const SpectrumVector s = pair_spectrum(in, 0.5);
  EXPECT_NEAR(s[0], 3.0, 1e-13);
  EXPECT_NEAR(s[1], 2.0, 1e-13);
}

TEST(Checks, InterpolationEqualityForCommutingInputs) {
  // for commuting A, B every log-blend is exact
  const MapInstance in = identity_instance(diag({4, 1, 0.5}), diag({2, 3, 1}));
  const InterpolationCheck c = check_interpolation(in, 0.5, 2.0, 0.3, true);
  EXPECT_GE(c.report.worst_margin, -1e-12);
  EXPECT_LT(c.equivalence_residual, 1e-12);
  ASSERT_TRUE(c.identity_report.has_value());
  EXPECT_LE(c.identity_report->equality_gap, 1e-12);
}

TEST(Checks, ConditionThreeWithPowerKernel) {
  // A #_a B with r = 1 is trivially tight
  const PsdMatrix a(diag({2, 1})), b(diag({1, 3}));
  const MeanEigenCheck c = check_condition_iii(a, b, MeanKernel::power(0.5), 1.0);
  EXPECT_NEAR(c.margin, 0.0, 1e-13);
  EXPECT_GE(check_condition_iii(a, b, MeanKernel::power(0.5), 2.0).margin, -1e-13);
}

TEST(Checks, RangeMeanRoutesAgree) {
  ComplexMatrix a(3, 3);
  a << 2, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 3;
  const Projection e(diag({1, 1, 0}));
  for (const char* id : {"power:0.3", "harmonic", "power:0.7"})
    EXPECT_LT(check_range_mean(PsdMatrix(a), e, kernel_by_id(id)), 1e-10) << id;
}

TEST(Checks, NormLimitOnIdentityMaps) {
  const MapInstance in = identity_instance(diag({2, 0.5}), diag({1, 3}));
  const LimitCheck c = check_norm_limit(in, NormSpec::operator_norm(), true);
  ASSERT_TRUE(c.has_limit);
  // commuting inputs: F(p) = max_i a_i b_i = 2 for every p
  EXPECT_NEAR(c.limit, 2.0, 1e-12);
  for (double v : c.values) EXPECT_NEAR(v, 2.0, 1e-10);
  EXPECT_EQ(c.grid, norm_limit_grid());
}
