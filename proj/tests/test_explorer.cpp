#include <gtest/gtest.h>

#include <cmath>

#include "majorlab/explorer.hpp"
#include "majorlab/random.hpp"
#include "oracle.hpp"

using namespace majorlab;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Direct assembly from the Pauli basis, independent of pauli_assemble.
std::pair<double, double> sum_spectrum_ref(const PauliParams& q, double p) {
  ComplexMatrix s1(2, 2), s3(2, 2), id = ComplexMatrix::Identity(2, 2);
  s1 << 0, 1, 1, 0;
  s3 << 1, 0, 0, -1;
  const ComplexMatrix a = std::cosh(q.alpha) * id + std::sinh(q.alpha) * s3;
  const ComplexMatrix b = std::cosh(q.beta) * id +
                          std::sinh(q.beta) * (std::sqrt(1 - q.c * q.c) * s1 + q.c * s3);
  const RealVector e = oracle::eigenvalues(oracle::power(a, p) + oracle::power(b, p));
  return {e(0), e(1)};
}

}  // namespace

TEST(Pauli, Assembly) {
  const auto [a, b] = pauli_assemble({0.0, 0.0, 0.3});
  EXPECT_LT(max_abs(a.matrix() - ComplexMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(b.matrix() - ComplexMatrix::Identity(2, 2)), 1e-15);
  const auto [a2, b2] = pauli_assemble({std::log(2.0), 0.7, -0.4});
  EXPECT_NEAR(a2.matrix()(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(a2.matrix()(1, 1).real(), 0.5, 1e-14);
  Rng rng(40);
  for (int t = 0; t < 20; ++t) {
    const PauliParams q{rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(-1, 1)};
    const auto [x, y] = pauli_assemble(q, random_unitary(2, rng));
    EXPECT_NEAR(x.matrix().determinant().real(), 1.0, 1e-12 * std::exp(2 * q.alpha));
    EXPECT_NEAR(y.matrix().determinant().real(), 1.0, 1e-12 * std::exp(2 * q.beta));
  }
  EXPECT_THROW(validate(PauliParams{-1, 0, 0}), DomainError);
  EXPECT_THROW(validate(PauliParams{0, 0, 1.5}), DomainError);
}

TEST(Pauli, ClosedFormSpecialValues) {
  const auto [l1, l2] = sum_spectrum_closed_form({1.3, 0.4, 0.2}, 0.0);
  EXPECT_DOUBLE_EQ(l1, 2.0);
  EXPECT_DOUBLE_EQ(l2, 2.0);
  // aligned equal matrices: 2 e^{ap}, 2 e^{-ap}
  const auto [m1, m2] = sum_spectrum_closed_form({0.8, 0.8, 1.0}, 1.7);
  EXPECT_NEAR(m1, 2 * std::exp(0.8 * 1.7), 1e-12);
  EXPECT_NEAR(m2, 2 * std::exp(-0.8 * 1.7), 1e-14);
  EXPECT_DOUBLE_EQ(ratio_g({1.3, 0.4, 0.2}, 0.0), 1.0);
  EXPECT_NEAR(log_ratio_g({0.8, 0.8, 1.0}, 2.0), 1.6, 1e-13);
}

TEST(Pauli, ClosedFormMatchesReference) {
  Rng rng(41);
  for (int t = 0; t < 500; ++t) {
    const PauliParams q{rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(-1, 1)};
    const double p = rng.uniform(0, 6);
    const auto [c1, c2] = sum_spectrum_closed_form(q, p);
    const auto [r1, r2] = sum_spectrum_ref(q, p);
    EXPECT_NEAR(c1, r1, 1e-10 * (1 + r1));
    EXPECT_NEAR(c2, r2, 1e-10 * (1 + r1));
  }
  EXPECT_LT(closed_form_agreement(2000, 3).max_residual, 1e-10);
}

TEST(Pauli, SymmetricInSwap) {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const PauliParams q{rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(-1, 1)};
    const double p = rng.uniform(0, 10);
    const double a = log_ratio_g(q, p), b = log_ratio_g({q.beta, q.alpha, q.c}, p);
    EXPECT_NEAR(a, b, 1e-12 * (1 + std::abs(a)));
  }
}

TEST(Pauli, RotationInvariance) {
  Rng rng(43);
  const PauliParams q{1.1, 2.3, -0.35};
  const auto [x, y] = pauli_assemble(q, random_unitary(2, rng));
  const double p = 1.4;
  const RealVector e = oracle::eigenvalues(oracle::power(x.matrix(), p) + oracle::power(y.matrix(), p));
  const auto [c1, c2] = sum_spectrum_closed_form(q, p);
  EXPECT_NEAR(e(0), c1, 1e-11 * c1);
  EXPECT_NEAR(e(1), c2, 1e-11 * c1);
}

TEST(Scan, TrivialCurves) {
  const ScanResult z = scan_log_concavity({0, 0, 0});
  EXPECT_EQ(z.grid.size(), 400u);
  for (double d : z.second_diff) EXPECT_EQ(d, 0.0);
  EXPECT_FALSE(z.violation);
  // log-linear: second differences vanish up to rounding
  const ScanResult lin = scan_log_concavity({0.7, 0.7, 1.0});
  EXPECT_LT(std::max(std::abs(lin.min_second_diff), std::abs(lin.max_second_diff)), 1e-12);
  EXPECT_FALSE(lin.violation);
  // B = I
  EXPECT_FALSE(scan_log_concavity({1, 0, 0.4}).violation);
  EXPECT_THROW(scan_log_concavity({1, 1, 0}, 10, 2), DomainError);
  EXPECT_THROW(scan_log_concavity({1, 1, 0}, -1, 20), DomainError);
}

TEST(Scan, DefaultToleranceAndCsv) {
  const ScanResult r = scan_log_concavity({1.0, 2.0, 0.1}, 5.0, 11);
  double m = 0;
  for (double v : r.log_g) m = std::max(m, std::abs(v));
  EXPECT_DOUBLE_EQ(r.scan_tol, 1e-9 * (1 + m));
  EXPECT_DOUBLE_EQ(r.grid[1], 0.5);
  const std::string csv = scan_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,g,log_g,second_diff");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  const Json j = scan_to_json(r, true);
  EXPECT_EQ(j["grid"].size(), 11u);
  EXPECT_FALSE(scan_to_json(r, false).contains("grid"));
}

// Reference numbers below come from a 50-digit evaluation of the same
// closed form on the 400-point grid of [0, 10].
TEST(Scan, LogConcavityFailsForKnownParameters) {
  const ScanResult a = scan_log_concavity({1.0, 0.5, -0.3});
  EXPECT_TRUE(a.violation);
  EXPECT_NEAR(a.max_second_diff, 3.4076372097938426e-6, 1e-14);
  EXPECT_NEAR(a.worst_p, 4.6616541353383459, 1e-12);
  EXPECT_NEAR(a.min_second_diff, -9.3372325320975248e-5, 1e-13);

  const ScanResult b =
      scan_log_concavity({2.5591081235012836, 4.752318481629676, -0.7116807745607325});
  EXPECT_TRUE(b.violation);
  EXPECT_NEAR(b.max_second_diff, 6.1293141683412464e-5, 1e-13);
  EXPECT_NEAR(b.worst_p, 0.82706766917293233, 1e-12);
  EXPECT_NEAR(b.min_second_diff, -0.0014195086057599608, 1e-12);
}

TEST(Scan, RandomSummaryDeterministic) {
  const RandomScanSummary a = random_scans(50, 9), b = random_scans(50, 9);
  EXPECT_EQ(summary_to_json(a).dump(), summary_to_json(b).dump());
  EXPECT_EQ(a.scans, 50);
  ASSERT_TRUE(a.worst.has_value());
  EXPECT_DOUBLE_EQ(a.worst_max_second_diff, a.worst->max_second_diff);
}

TEST(Search, CommutingInputsSatisfyInterpolation) {
  SearchInstance s{ComplexMatrix(), ComplexMatrix(), KrausMap::identity(3), KrausMap::identity(3)};
  RealVector da(3), db(3);
  da << 3.0, 0.2, 1.1;
  db << 0.4, 2.5, 1.0;
  s.a = da.cast<Complex>().asDiagonal();
  s.b = db.cast<Complex>().asDiagonal();
  s.identity = true;
  for (double th : {0.0, 0.3, 0.8}) {
    s.theta = th;
    s.p0 = 0.4;
    s.p1 = 2.2;
    EXPECT_GE(search_margin(SearchTarget::mean_interpolation, s), -1e-12);
    s.alpha = 0.6;
    EXPECT_GE(search_margin(SearchTarget::product_interpolation, s), -1e-12);
    EXPECT_GE(search_margin(SearchTarget::better_factor, s), -1e-12);
  }
}

TEST(Search, EqualExponentsGiveZeroMargin) {
  oracle::Gen gen(44);
  Rng rng(44);
  SearchInstance s{gen.pd(2), gen.pd(2), random_map(2, 2, 2, MapMode::plain, rng),
                   random_map(2, 2, 1, MapMode::plain, rng)};
  s.p0 = s.p1 = 1.3;
  EXPECT_NEAR(search_margin(SearchTarget::mean_interpolation, s), 0.0, 1e-10);
  EXPECT_NEAR(search_margin(SearchTarget::product_interpolation, s), 0.0, 1e-10);
}

TEST(Search, DeterministicAndIdentitySlicesOfProvedForms) {
  SearchConfig cfg;
  cfg.budget = 600;
  cfg.target = SearchTarget::product_interpolation;
  cfg.identity_only = true;
  const SearchReport a = search(cfg), b = search(cfg);
  EXPECT_EQ(search_report_to_json(a).dump(), search_report_to_json(b).dump());
  // identity maps: the non-symmetrized product form is a proved inequality
  EXPECT_GE(a.worst_margin, -cfg.tol);
  EXPECT_FALSE(a.exceeds_noise_floor);
  // local descent splits its half evenly over at most 8 starts
  EXPECT_LE(a.evaluations + a.skipped, cfg.budget);
  EXPECT_GT(a.evaluations + a.skipped, cfg.budget - 8);

  cfg.target = SearchTarget::better_factor;
  EXPECT_GE(search(cfg).worst_margin, -10 * cfg.tol);
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.n = 5;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = SearchConfig{};
  cfg.identity_only = true;
  cfg.m = 3;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = SearchConfig{};
  cfg.budget = 1;
  EXPECT_THROW(validate(cfg), DomainError);
}
