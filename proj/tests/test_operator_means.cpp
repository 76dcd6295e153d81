#include <gtest/gtest.h>

#include "majorlab/operator_means.hpp"
#include "majorlab/random.hpp"
#include "oracle.hpp"

using namespace majorlab;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix m2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Kernels, CatalogNormalizedAndNamed) {
  for (const MeanKernel& f : catalog()) {
    EXPECT_NEAR(f(1.0), 1.0, 1e-14) << f.id();
    EXPECT_TRUE(f.trusted()) << f.id();
    EXPECT_EQ(kernel_by_id(f.id()).id(), f.id());
  }
  EXPECT_THROW(kernel_by_id("nope"), DomainError);
  EXPECT_THROW(kernel_by_id("power:1.5"), DomainError);
  EXPECT_NEAR(kernel_by_id("geometric")(4.0), 2.0, 1e-14);
}

TEST(Kernels, ScalarValues) {
  EXPECT_NEAR(kernel_by_id("arithmetic")(3.0), 2.0, 1e-14);
  EXPECT_NEAR(kernel_by_id("harmonic")(3.0), 1.5, 1e-14);
  // logarithmic mean of 1 and x: (x - 1) / log x
  EXPECT_NEAR(kernel_by_id("logmean")(std::exp(1.0)), std::exp(1.0) - 1.0, 1e-12);
  EXPECT_NEAR(kernel_by_id("logmean")(1.0 + 1e-9), 1.0 + 5e-10, 1e-12);
}

TEST(Kernels, AdjointDualTranspose) {
  const MeanKernel p = MeanKernel::power(0.3);
  EXPECT_NEAR(adjoint(p)(5.0), std::pow(5.0, 0.3), 1e-13);
  EXPECT_NEAR(dual(p)(5.0), std::pow(5.0, 0.7), 1e-13);
  EXPECT_NEAR(transpose(p)(5.0), std::pow(5.0, 0.7), 1e-13);
  const MeanKernel h = kernel_by_id("harmonic");
  // harmonic and arithmetic are adjoint to each other
  EXPECT_NEAR(adjoint(h)(3.0), kernel_by_id("arithmetic")(3.0), 1e-13);
  EXPECT_NEAR(dual(h)(3.0), kernel_by_id("arithmetic")(3.0), 1e-13);
}

TEST(Kernels, ConditionOne) {
  for (double a : {0.0, 0.3, 0.5, 1.0})
    EXPECT_TRUE(check_condition_i(MeanKernel::power(a)).holds);
  // ((1 + x) / 2)^r <= (1 + x^r) / 2 by convexity; the harmonic kernel
  // reverses it
  EXPECT_TRUE(check_condition_i(kernel_by_id("arithmetic")).holds);
  const ConditionReport h = check_condition_i(kernel_by_id("harmonic"));
  EXPECT_FALSE(h.holds);
  EXPECT_LT(h.worst_margin, 0.0);
}

TEST(ScalarMean, BoundaryLimits) {
  EXPECT_NEAR(scalar_mean(4.0, 9.0, MeanKernel::power(0.5)), 6.0, 1e-13);
  EXPECT_EQ(scalar_mean(0.0, 9.0, MeanKernel::power(0.5)), 0.0);
  EXPECT_NEAR(scalar_mean(0.0, 9.0, kernel_by_id("arithmetic")), 4.5, 1e-14);
  EXPECT_NEAR(scalar_geometric(4.0, 9.0, 0.5), 6.0, 1e-13);
  EXPECT_EQ(scalar_geometric(0.0, 9.0, 0.0), 0.0);
  EXPECT_EQ(scalar_geometric(0.0, 9.0, 1.0), 9.0);
}

TEST(Mean, FrozenGeometricValues) {
  // reference values from a 50-digit evaluation of A^{1/2}(A^{-1/2}BA^{-1/2})^a A^{1/2}
  const PsdMatrix a(m2(2, 1, 1, 2)), b(m2(1, 0, 0, 3));
  const ComplexMatrix g5 = weighted_geometric(a, b, 0.5).value.matrix();
  EXPECT_LT(max_abs(g5 - m2(1.3887301496588272, 0.46291004988627573,
                            0.46291004988627573, 2.3145502494313787)), 1e-13);
  const ComplexMatrix g3 = weighted_geometric(a, b, 0.3).value.matrix();
  EXPECT_LT(max_abs(g3 - m2(1.6019842576178219, 0.66442584568301362,
                            0.66442584568301362, 2.1482493901214113)), 1e-13);
}

TEST(Mean, GeometricAgainstReference) {
  oracle::Gen gen(11);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = gen.pd(4), b = gen.pd(4);
    for (double al : {0.2, 0.5, 0.9}) {
      const MeanResult r = weighted_geometric(PsdMatrix(a), PsdMatrix(b), al);
      EXPECT_EQ(r.route, MeanRoute::direct);
      EXPECT_LT(max_abs(r.value.matrix() - oracle::geometric(a, b, al)), 1e-10);
    }
  }
}

TEST(Mean, ArithmeticAndHarmonic) {
  oracle::Gen gen(12);
  const ComplexMatrix a = gen.pd(3), b = gen.pd(3);
  const PsdMatrix pa(a), pb(b);
  EXPECT_LT(max_abs(mean(pa, pb, kernel_by_id("arithmetic")).value.matrix() - (a + b) / 2.0),
            1e-12);
  const ComplexMatrix h = 2.0 * (a.inverse() + b.inverse()).inverse();
  EXPECT_LT(max_abs(mean(pa, pb, kernel_by_id("harmonic")).value.matrix() - h), 1e-11);
}

TEST(Mean, IdempotentAndTransposed) {
  oracle::Gen gen(13);
  const ComplexMatrix a = gen.pd(3), b = gen.pd(3);
  for (const MeanKernel& f : catalog()) {
    EXPECT_LT(max_abs(mean(PsdMatrix(a), PsdMatrix(a), f).value.matrix() - a), 1e-11) << f.id();
    const ComplexMatrix x = mean(PsdMatrix(a), PsdMatrix(b), f).value.matrix();
    const ComplexMatrix y = mean(PsdMatrix(b), PsdMatrix(a), transpose(f)).value.matrix();
    EXPECT_LT(max_abs(x - y), 1e-10) << f.id();
  }
}

TEST(Mean, CommutingInputsReduceToScalarMeans) {
  const PsdMatrix a(diag({1.0, 4.0, 0.5})), b(diag({9.0, 1.0, 2.0}));
  for (const MeanKernel& f : catalog()) {
    const ComplexMatrix m = mean(a, b, f).value.matrix();
    EXPECT_NEAR(m(0, 0).real(), scalar_mean(1.0, 9.0, f), 1e-12) << f.id();
    EXPECT_NEAR(m(1, 1).real(), scalar_mean(4.0, 1.0, f), 1e-12) << f.id();
    EXPECT_NEAR(m(2, 2).real(), scalar_mean(0.5, 2.0, f), 1e-12) << f.id();
  }
}

TEST(Mean, SingularRoutes) {
  // only B invertible: transposed route
  const PsdMatrix a(diag({1.0, 0.0})), b(diag({4.0, 4.0}));
  const MeanResult r = weighted_geometric(a, b, 0.5);
  EXPECT_EQ(r.route, MeanRoute::transposed);
  EXPECT_LT(max_abs(r.value.matrix() - diag({2.0, 0.0})), 1e-13);
  // both singular, orthogonal ranges: geometric mean vanishes, arithmetic does not
  const PsdMatrix p(diag({1.0, 0.0})), q(diag({0.0, 1.0}));
  const MeanResult g = weighted_geometric(p, q, 0.5);
  EXPECT_EQ(g.route, MeanRoute::shorted);
  EXPECT_LT(max_abs(g.value.matrix()), 1e-14);
  EXPECT_LT(max_abs(mean(p, q, kernel_by_id("arithmetic")).value.matrix() - diag({0.5, 0.5})),
            1e-14);
  // a projection is a fixed point
  EXPECT_LT(max_abs(weighted_geometric(p, p, 0.3).value.matrix() - p.matrix()), 1e-14);
}

TEST(Mean, ShortedRouteMatchesEpsilonLadder) {
  oracle::Gen gen(14);
  for (int t = 0; t < 10; ++t) {
    const PsdMatrix a(gen.psd_rank(4, 2)), b(gen.psd_rank(4, 3));
    // harmonic: the ladder converges linearly in eps
    const MeanKernel f = kernel_by_id("harmonic");
    const MeanResult exact = mean(a, b, f);
    ASSERT_EQ(exact.route, MeanRoute::shorted);
    const MeanResult ladder = mean_epsilon_path(a, b, f);
    EXPECT_EQ(ladder.route, MeanRoute::epsilon_ladder);
    EXPECT_LT(max_abs(exact.value.matrix() - ladder.value.matrix()), 1e-6);
  }
}

TEST(Mean, HarmonicShortedClosedForm) {
  // A ! B = 2 (A^+ + B^+)^{-1} on common ranges; diag example
  const PsdMatrix a(diag({2.0, 1.0, 0.0})), b(diag({2.0, 0.0, 5.0}));
  const ComplexMatrix m = mean(a, b, kernel_by_id("harmonic")).value.matrix();
  EXPECT_LT(max_abs(m - diag({2.0, 0.0, 0.0})), 1e-12);
}

TEST(Mean, MonotoneInEachArgument) {
  oracle::Gen gen(15);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = gen.pd(3), b = gen.pd(3), d = gen.psd_rank(3, 1);
    for (const MeanKernel& f : catalog()) {
      const ComplexMatrix lo = mean(PsdMatrix(a), PsdMatrix(b), f).value.matrix();
      const ComplexMatrix hi = mean(PsdMatrix(ComplexMatrix(a + d)), PsdMatrix(b), f).value.matrix();
      EXPECT_GE(oracle::eigenvalues(hi - lo).minCoeff(), -1e-10) << f.id();
    }
  }
}

TEST(Mean, ConditionedInnerMatrixKeepsSmallEigenvalues) {
  // inner matrix A^{-1/2} B A^{-1/2} has eigenvalue ratio ~ 1e-13 while both
  // inputs are well inside the invertible range
  const PsdMatrix a(diag({1e-6, 1.0})), b(diag({1.0, 1e-7}));
  const ComplexMatrix g = weighted_geometric(a, b, 0.5).value.matrix();
  EXPECT_NEAR(g(0, 0).real(), 1e-3, 1e-15);
  EXPECT_NEAR(g(1, 1).real(), std::sqrt(1e-7), 1e-15);
}

TEST(Mean, RejectsBadInputs) {
  EXPECT_THROW(weighted_geometric(PsdMatrix::identity(2), PsdMatrix::identity(3), 0.5),
               DimensionError);
  EXPECT_THROW(weighted_geometric(PsdMatrix::identity(2), PsdMatrix::identity(2), 1.5),
               DomainError);
}

TEST(Bridges, PointwiseMeans) {
  const ScalarFunction a = ScalarFunction::power(1.0), b = ScalarFunction::constant(4.0);
  EXPECT_NEAR(function_bridge(a, b, MeanKernel::power(0.5))(9.0), 6.0, 1e-13);
  EXPECT_NEAR(geometric_bridge(a, b, 0.5)(9.0), 6.0, 1e-13);
  EXPECT_NEAR(geometric_bridge(a, b, 0.0)(9.0), 9.0, 1e-13);
}
