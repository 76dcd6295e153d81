#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "majorlab/majorization.hpp"
#include "majorlab/random.hpp"
#include "oracle.hpp"

using namespace majorlab;

TEST(Majorize, TwoByTwoExamples) {
  // (2,1) vs (3,1): partial products 2 <= 3 and 2 <= 3
  EXPECT_EQ(weak_log_majorize({2, 1}, {3, 1}).verdict, Verdict::holds);
  EXPECT_EQ(weak_log_majorize({3, 1}, {2, 1}).verdict, Verdict::fails);
  // full products differ, so the log order fails
  EXPECT_EQ(log_majorize({2, 1}, {3, 1}).verdict, Verdict::fails);
  EXPECT_EQ(log_majorize({2, 2}, {4, 1}).verdict, Verdict::holds);
  EXPECT_NEAR(log_majorize({2, 2}, {4, 1}).equality_gap, 0.0, 1e-15);
  // tail products: (3,1) gives 1, 3 and (2,1) gives 1, 2
  EXPECT_EQ(log_supermajorize({3, 1}, {2, 1}).verdict, Verdict::holds);
  EXPECT_EQ(log_supermajorize({2, 1}, {3, 1}).verdict, Verdict::fails);
}

TEST(Majorize, MarginsAreLogRatios) {
  const MajorizationReport r = weak_log_majorize({2, 1}, {3, 1});
  ASSERT_EQ(r.per_k.size(), 2u);
  EXPECT_NEAR(r.per_k[0].margin, std::log(1.5), 1e-15);
  EXPECT_NEAR(r.worst_margin, std::log(1.5), 1e-15);
}

TEST(Majorize, ZeroClassAndPadding) {
  // zero entries: prod of lhs is 0, always below
  EXPECT_EQ(weak_log_majorize({1, 0}, {1, 1e-3}).verdict, Verdict::holds);
  EXPECT_EQ(weak_log_majorize({1, 1e-3}, {1, 0}).verdict, Verdict::fails);
  EXPECT_EQ(weak_log_majorize({1, 1e-3}, {1, 0}).worst_margin,
            -std::numeric_limits<double>::infinity());
  // 1e-13 relative counts as zero in its own sequence
  EXPECT_EQ(weak_log_majorize({1, 1e-13}, {1, 0}).verdict, Verdict::holds);
  // shorter sequences are padded with zeros
  EXPECT_EQ(weak_log_majorize({2}, {3, 1}).per_k.size(), 2u);
  EXPECT_EQ(log_majorize({0, 0}, {0, 0}).verdict, Verdict::holds);
}

TEST(Majorize, ScaleInvariant) {
  oracle::Gen gen(30);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(gen.uniform(0.01, 2));
      b.push_back(gen.uniform(0.01, 2));
    }
    const SpectrumVector x = SpectrumVector::from_unsorted(a), y = SpectrumVector::from_unsorted(b);
    const double c = gen.uniform(1e-3, 1e3);
    EXPECT_NEAR(weak_log_majorize(x, y).worst_margin,
                weak_log_majorize(x.scaled(c), y.scaled(c)).worst_margin, 1e-12);
  }
}

TEST(Classify, TieBandAndBorderline) {
  EXPECT_EQ(classify_margin(0.0, 1e-8), Verdict::holds);
  EXPECT_EQ(classify_margin(-5e-13, 1e-8), Verdict::holds);
  EXPECT_EQ(classify_margin(-1e-10, 1e-8), Verdict::borderline);
  EXPECT_EQ(classify_margin(-1e-8, 1e-8), Verdict::borderline);
  EXPECT_EQ(classify_margin(-2e-8, 1e-8), Verdict::fails);
  EXPECT_EQ(classify_margin(std::nan(""), 1e-8), Verdict::fails);
  EXPECT_EQ(worse(Verdict::holds, Verdict::borderline), Verdict::borderline);
}

TEST(PowerBlend, EndpointsAndZeros) {
  const SpectrumVector a{4, 1}, b{9, 0};
  EXPECT_EQ(power_blend(a, b, 0.0).values(), a.values());
  EXPECT_EQ(power_blend(a, b, 1.0).values(), b.values());
  const SpectrumVector m = power_blend(a, b, 0.5);
  EXPECT_NEAR(m[0], 6.0, 1e-14);
  EXPECT_EQ(m[1], 0.0);
  EXPECT_THROW(power_blend(a, SpectrumVector{1}, 0.5), DimensionError);
  EXPECT_THROW(power_blend(a, b, 1.5), DomainError);
  bool anomaly = true;
  power_blend({4, 1}, {1, 1}, 0.5, &anomaly);
  EXPECT_FALSE(anomaly);
}

TEST(EntrywiseProduct, Sorted) {
  EXPECT_EQ(entrywise_product({3, 1}, {2, 2}).values(), (std::vector<double>{6, 2}));
  EXPECT_TRUE(weak_majorize_sum({2, 1}, {3, 0}));
  EXPECT_FALSE(weak_majorize_sum({3, 1}, {2, 1}));
}

TEST(Norms, GaugeValues) {
  const std::vector<double> s{3, 2, 1};
  EXPECT_EQ(gauge(s, NormSpec::operator_norm()), 3.0);
  EXPECT_EQ(gauge(s, NormSpec::ky_fan(2)), 5.0);
  EXPECT_EQ(gauge(s, NormSpec::ky_fan(9)), 6.0);
  EXPECT_EQ(gauge(s, NormSpec::trace()), 6.0);
  EXPECT_NEAR(gauge(s, NormSpec::schatten(2)), std::sqrt(14.0), 1e-14);
  EXPECT_NEAR(gauge(s, NormSpec::schatten(3)), std::cbrt(36.0), 1e-14);
}

TEST(Norms, MatrixNormsFromSingularValues) {
  oracle::Gen gen(31);
  const ComplexMatrix x = gen.gaussian(3, 4);
  EXPECT_NEAR(gauge_norm(x, NormSpec::schatten(2)), x.norm(), 1e-12);
  EXPECT_NEAR(gauge_norm(x, NormSpec::operator_norm()), oracle::singular_values(x)(0), 1e-12);
  const ComplexMatrix p = gen.pd(3);
  EXPECT_NEAR(gauge_norm(PsdMatrix(p), NormSpec::trace()), p.trace().real(), 1e-12);
}

TEST(Norms, ParseAndPrint) {
  for (const char* t : {"operator", "trace", "ky_fan:2", "schatten:3"})
    EXPECT_EQ(NormSpec::parse(t).to_string(), t);
  EXPECT_EQ(NormSpec::parse("schatten:1"), NormSpec::trace());
  for (const char* bad : {"", "ky_fan:0", "ky_fan:x", "schatten:0.5", "frobenius", "schatten:2y"})
    EXPECT_THROW(NormSpec::parse(bad), DomainError) << bad;
}

TEST(AntiNorm, DerivedValues) {
  // trace base, p = 1: (sum 1/lambda)^{-1}
  const AntiNormSpec tr{NormSpec::trace(), 1.0};
  EXPECT_NEAR(derived_anti_norm(SpectrumVector{2, 1}, tr), 1.0 / 1.5, 1e-15);
  // operator base: lambda_min
  EXPECT_NEAR(derived_anti_norm(SpectrumVector{5, 3, 2}, {NormSpec::operator_norm(), 2.0}), 2.0,
              1e-14);
  EXPECT_EQ(derived_anti_norm(SpectrumVector{2, 0}, tr), 0.0);
  EXPECT_EQ(derived_anti_norm(PsdMatrix(ComplexMatrix::Zero(2, 2)), tr), 0.0);
  EXPECT_THROW(derived_anti_norm(SpectrumVector{2, 1}, {NormSpec::trace(), 0.0}), DomainError);
  // of_power(t) equals the anti-norm of lambda^t
  const SpectrumVector l{3, 2, 0.5};
  EXPECT_NEAR(derived_anti_norm_of_power(l, 2.0, tr), derived_anti_norm(l.pow(2.0), tr), 1e-14);
}

TEST(AntiNorm, Superadditive) {
  oracle::Gen gen(32);
  const AntiNormSpec spec{NormSpec::schatten(2), 0.5};
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = gen.pd(3), b = gen.pd(3);
    EXPECT_GE(derived_anti_norm(PsdMatrix(ComplexMatrix(a + b)), spec) + 1e-12,
              derived_anti_norm(PsdMatrix(a), spec) + derived_anti_norm(PsdMatrix(b), spec));
  }
}

TEST(ArakiProperty, RandomPairs) {
  // lambda^r(A^{1/2} B A^{1/2}) is log-majorized by lambda(A^{r/2} B^r A^{r/2})
  Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const PsdMatrix a = random_psd(4, rng), b = random_psd(4, rng);
    for (double r : {1.0, 1.5, 3.0}) {
      const MajorizationReport rep =
          log_majorize(sandwich_spectrum(a, b).pow(r),
                       sandwich_spectrum(fractional_power(a, r), fractional_power(b, r)));
      EXPECT_GE(rep.worst_margin, -1e-10);
      EXPECT_LE(rep.equality_gap, 1e-9);
    }
  }
}
