#include <gtest/gtest.h>

#include "majorlab/positive_maps.hpp"
#include "majorlab/random.hpp"
#include "oracle.hpp"

using namespace majorlab;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// sum_j V_j* X V_j written out directly
ComplexMatrix apply_ref(const KrausMap& phi, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(phi.out_dim(), phi.out_dim());
  for (const ComplexMatrix& v : phi.kraus_ops()) out += v.adjoint() * x * v;
  return out;
}

}  // namespace

TEST(KrausMap, IdentityAndZero) {
  oracle::Gen gen(20);
  const ComplexMatrix x = gen.hermitian(3);
  EXPECT_LT(max_abs(KrausMap::identity(3).apply_raw(x) - x), 1e-15);
  EXPECT_LT(max_abs(KrausMap::zero(3, 2).apply_raw(x)), 1e-15);
  EXPECT_THROW(KrausMap::identity(3).apply_raw(ComplexMatrix::Identity(2, 2)), DimensionError);
}

TEST(KrausMap, ApplyMatchesKrausSum) {
  Rng rng(21);
  oracle::Gen gen(21);
  for (int t = 0; t < 10; ++t) {
    const KrausMap phi = random_map(3, 4, 2, MapMode::plain, rng);
    const ComplexMatrix x = gen.pd(3);
    EXPECT_LT(max_abs(phi.apply(PsdMatrix(x)).matrix() - apply_ref(phi, x)), 1e-12);
    EXPECT_LT(max_abs(phi.apply_identity().matrix() -
                      apply_ref(phi, ComplexMatrix::Identity(3, 3))),
              1e-12);
    EXPECT_LT(max_abs(phi.scaled(2.5).apply_raw(x) - 2.5 * apply_ref(phi, x)), 1e-12);
  }
}

TEST(KrausMap, RandomModes) {
  Rng rng(22);
  const KrausMap u = random_map(4, 3, 2, MapMode::unital, rng);
  EXPECT_LT(max_abs(u.apply_identity().matrix() - ComplexMatrix::Identity(3, 3)), 1e-12);
  const KrausMap s = random_map(3, 3, 2, MapMode::subunital, rng);
  EXPECT_LT(s.apply_identity().lambda_max(), 1.0);
  EXPECT_THROW(random_map(2, 3, 1, MapMode::unital, rng), DimensionError);
}

TEST(KrausMap, EpsilonPerturbation) {
  Rng rng(23);
  oracle::Gen gen(23);
  const KrausMap phi = random_map(3, 2, 1, MapMode::plain, rng);
  const ComplexMatrix x = gen.pd(3);
  const ComplexMatrix want =
      apply_ref(phi, x) + 1e-3 * x.trace() * ComplexMatrix::Identity(2, 2);
  EXPECT_LT(max_abs(epsilon_perturb(phi, 1e-3).apply_raw(x) - want), 1e-12);
}

TEST(Choi, RoundTrip) {
  Rng rng(24);
  oracle::Gen gen(24);
  const KrausMap phi = random_map(3, 2, 2, MapMode::plain, rng);
  const ChoiMap c(3, 2, phi.choi());
  const ComplexMatrix x = gen.gaussian(3, 3);
  EXPECT_LT(max_abs(c.apply(x) - phi.apply_raw(x)), 1e-12);
  const KrausMap back = c.to_kraus();
  EXPECT_LT(max_abs(back.apply_raw(x) - phi.apply_raw(x)), 1e-11);
  // transpose map: positive but not completely positive
  ComplexMatrix t = ComplexMatrix::Zero(4, 4);
  t(0, 0) = t(3, 3) = 1.0;
  t(1, 2) = t(2, 1) = 1.0;
  EXPECT_THROW(ChoiMap(2, 2, t).to_kraus(), InvariantError);
}

TEST(Lift, TensorPowerGivesCompound) {
  Rng rng(25);
  oracle::Gen gen(25);
  for (auto [n, l, k] : {std::tuple<Index, Index, int>{3, 3, 2}, {2, 3, 2}, {4, 3, 3}, {3, 4, 2}}) {
    const KrausMap phi = random_map(n, l, 2, MapMode::plain, rng);
    const KrausMap lifted = lift_antisymmetric(phi, k);
    const ComplexMatrix x = gen.pd(n);
    const ComplexMatrix lhs = lifted.apply_raw(tensor_power(x, k));
    const ComplexMatrix rhs = compound(phi.apply_raw(x), k);
    EXPECT_LT(max_abs(lhs - rhs), 1e-10 * (1 + max_abs(rhs)));
  }
}

TEST(Lift, AntisymmetricIsometry) {
  const ComplexMatrix p = antisymmetric_isometry(4, 2);
  EXPECT_EQ(p.rows(), 16);
  EXPECT_EQ(p.cols(), 6);
  EXPECT_LT(max_abs(p.adjoint() * p - ComplexMatrix::Identity(6, 6)), 1e-14);
}

TEST(Certification, ContractionAndGeometricLevels) {
  Rng rng(26);
  for (int t = 0; t < 10; ++t) {
    const KrausMap phi = random_map(3, 3, 2, MapMode::plain, rng);
    const KrausMap psi = random_map(2, 3, 2, MapMode::plain, rng);
    const MapPair c = certify_contraction_pair(phi, psi);
    EXPECT_TRUE(c.contraction_certified);
    EXPECT_LE(contraction_level(c.phi, c.psi), 1.0);
    const MapPair g = certify_geometric_pair(phi, psi, 0.4);
    EXPECT_TRUE(g.geometric_certified);
    EXPECT_LE(geometric_level(g.phi, g.psi, 0.4), 1.0);
  }
  // identity maps have level exactly 1
  EXPECT_NEAR(contraction_level(KrausMap::identity(2), KrausMap::identity(2)), 1.0, 1e-15);
}
