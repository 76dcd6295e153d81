#include "majorlab/positive_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace majorlab {
namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace

KrausMap::KrausMap(Index in_dim, Index out_dim, std::vector<ComplexMatrix> ops)
    : in_(in_dim), out_(out_dim), ops_(std::move(ops)) {
  if (in_ < 1 || out_ < 1) throw DimensionError("KrausMap: dimensions must be >= 1");
  for (std::size_t j = 0; j < ops_.size(); ++j) {
    if (ops_[j].rows() != in_ || ops_[j].cols() != out_) {
      std::ostringstream os;
      os << "KrausMap: operator " << j << " has shape " << ops_[j].rows() << "x"
         << ops_[j].cols() << ", expected " << in_ << "x" << out_;
      throw DimensionError(os.str());
    }
  }
}

KrausMap KrausMap::identity(Index n) {
  return KrausMap(n, n, {ComplexMatrix::Identity(n, n)});
}

KrausMap KrausMap::zero(Index n, Index l) { return KrausMap(n, l, {}); }

void KrausMap::check_input(Index rows, Index cols) const {
  if (rows != in_ || cols != in_) {
    std::ostringstream os;
    os << "KrausMap::apply: input is " << rows << "x" << cols << ", expected "
       << in_ << "x" << in_;
    throw DimensionError(os.str());
  }
}

ComplexMatrix KrausMap::apply_raw(const ComplexMatrix& x) const {
  check_input(x.rows(), x.cols());
  ComplexMatrix out = ComplexMatrix::Zero(out_, out_);
  for (const ComplexMatrix& v : ops_) out.noalias() += v.adjoint() * x * v;
  return out;
}

HermitianMatrix KrausMap::apply(const HermitianMatrix& x) const {
  return HermitianMatrix(symmetrized(apply_raw(x.matrix())));
}

PsdMatrix KrausMap::apply(const PsdMatrix& x) const {
  return PsdMatrix(apply(x.hermitian()));
}

PsdMatrix KrausMap::apply_identity() const {
  return apply(PsdMatrix::identity(in_));
}

KrausMap KrausMap::scaled(double c) const {
  if (!(c >= 0.0)) throw DomainError("KrausMap::scaled: factor must be >= 0");
  std::vector<ComplexMatrix> ops = ops_;
  const double s = std::sqrt(c);
  for (ComplexMatrix& v : ops) v *= s;
  return KrausMap(in_, out_, std::move(ops));
}

ComplexMatrix KrausMap::choi() const {
  ComplexMatrix c = ComplexMatrix::Zero(in_ * out_, in_ * out_);
  for (Index i = 0; i < in_; ++i) {
    for (Index j = 0; j < in_; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(in_, in_);
      e(i, j) = 1.0;
      c.block(i * out_, j * out_, out_, out_) = apply_raw(e);
    }
  }
  return c;
}

KrausMap epsilon_perturb(const KrausMap& phi, double eps) {
  if (!(eps > 0.0)) throw DomainError("epsilon_perturb: eps must be > 0");
  std::vector<ComplexMatrix> ops = phi.kraus_ops();
  const double s = std::sqrt(eps);
  for (Index i = 0; i < phi.in_dim(); ++i) {
    for (Index j = 0; j < phi.out_dim(); ++j) {
      ComplexMatrix v = ComplexMatrix::Zero(phi.in_dim(), phi.out_dim());
      v(i, j) = s;
      ops.push_back(std::move(v));
    }
  }
  return KrausMap(phi.in_dim(), phi.out_dim(), std::move(ops));
}

ComplexMatrix antisymmetric_isometry(Index d, int k) {
  const auto sets = index_sets(static_cast<int>(d), k);
  Index rows = 1;
  for (int i = 0; i < k; ++i) rows *= d;
  ComplexMatrix q = ComplexMatrix::Zero(rows, static_cast<Index>(sets.size()));
  std::vector<int> perm(static_cast<std::size_t>(k));
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  const double norm = 1.0 / std::sqrt(fact);
  for (std::size_t c = 0; c < sets.size(); ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Index row = 0;
      for (int m = 0; m < k; ++m) row = row * d + sets[c][perm[m]];
      q(row, static_cast<Index>(c)) += norm * permutation_sign(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return q;
}

KrausMap lift_antisymmetric(const KrausMap& phi, int k) {
  const Index n = phi.in_dim();
  const Index l = phi.out_dim();
  if (k < 1 || k > std::min(n, l)) {
    std::ostringstream os;
    os << "lift_antisymmetric: k = " << k << " outside [1, " << std::min(n, l)
       << "]";
    throw DomainError(os.str());
  }
  if (k == 1) return phi;
  const auto out = static_cast<Index>(
      binomial(static_cast<std::size_t>(l), static_cast<std::size_t>(k)));
  Index in = 1;
  for (int i = 0; i < k; ++i) in *= n;
  if (out > kMaxCompoundDim || in > kMaxLiftInput) {
    std::ostringstream os;
    os << "lift_antisymmetric: lifted map " << in << " -> " << out
       << " exceeds the size cap";
    throw DimensionError(os.str());
  }
  const ComplexMatrix q = antisymmetric_isometry(l, k);
  const auto& v = phi.kraus_ops();
  const std::size_t j = v.size();
  std::vector<ComplexMatrix> ops;
  if (j == 0) return KrausMap(in, out, {});
  std::vector<std::size_t> tuple(static_cast<std::size_t>(k), 0);
  while (true) {
    ComplexMatrix t = v[tuple[0]];
    for (int m = 1; m < k; ++m) t = kron(t, v[tuple[m]]);
    ops.push_back(t * q);
    int m = k - 1;
    while (m >= 0 && ++tuple[m] == j) tuple[m--] = 0;
    if (m < 0) break;
  }
  return KrausMap(in, out, std::move(ops));
}

const char* to_string(MapMode m) {
  switch (m) {
    case MapMode::plain: return "plain";
    case MapMode::unital: return "unital";
    case MapMode::subunital: return "subunital";
  }
  return "?";
}

KrausMap random_map(Index n, Index l, int num_kraus, MapMode mode, Rng& rng) {
  if (num_kraus < 1 || num_kraus > 3)
    throw DomainError("random_map: num_kraus must be in {1, 2, 3}");
  if (n < 1 || l < 1 || n > 8 || l > 8)
    throw DimensionError("random_map: dimensions must be in [1, 8]");
  if (mode == MapMode::unital && n < l)
    throw DimensionError("random_map: a unital map needs in_dim >= out_dim");
  std::vector<ComplexMatrix> ops;
  for (int j = 0; j < num_kraus; ++j) ops.push_back(random_gaussian(n, l, rng));
  KrausMap phi(n, l, std::move(ops));
  if (mode == MapMode::plain) return phi;
  const PsdMatrix s = phi.apply_identity();
  if (mode == MapMode::subunital)
    return phi.scaled(1.0 / (s.lambda_max() + 0.1));
  if (!s.invertible())
    throw RankError("random_map: Phi(I) is singular, cannot normalize");
  const PsdMatrix inv_root = PsdMatrix(apply_scalar_function(
      s, [](double x) { return 1.0 / std::sqrt(x); }));
  std::vector<ComplexMatrix> normalized;
  for (const ComplexMatrix& v : phi.kraus_ops())
    normalized.push_back(v * inv_root.matrix());
  return KrausMap(n, l, std::move(normalized));
}

double contraction_level(const KrausMap& phi, const KrausMap& psi) {
  if (phi.out_dim() != psi.out_dim())
    throw DimensionError("map pair: output dimensions differ");
  return sandwich(phi.apply_identity(), psi.apply_identity()).lambda_max();
}

double geometric_level(const KrausMap& phi, const KrausMap& psi, double alpha) {
  const double a = phi.apply_identity().lambda_max();
  const double b = psi.apply_identity().lambda_max();
  const double x = alpha == 1.0 ? 1.0 : std::pow(a, 1.0 - alpha);
  const double y = alpha == 0.0 ? 1.0 : std::pow(b, alpha);
  return x * y;
}

MapPair certify_contraction_pair(const KrausMap& phi, const KrausMap& psi) {
  const double level = contraction_level(phi, psi);
  const double target = 1.0 / (1.0 + kCertifyMargin);
  if (level <= target) return MapPair{phi, psi, true, false, 1.0};
  const double c = target / level;
  return MapPair{phi, psi.scaled(c), true, false, c};
}

MapPair certify_geometric_pair(const KrausMap& phi, const KrausMap& psi,
                               double alpha) {
  if (phi.out_dim() != psi.out_dim())
    throw DimensionError("map pair: output dimensions differ");
  const double level = geometric_level(phi, psi, alpha);
  const double target = 1.0 / (1.0 + kCertifyMargin);
  if (level <= target) return MapPair{phi, psi, false, true, 1.0};
  const double c = target / level;
  return MapPair{phi.scaled(c), psi.scaled(c), false, true, c};
}

ChoiMap::ChoiMap(Index in_dim, Index out_dim, ComplexMatrix choi)
    : in_(in_dim), out_(out_dim), choi_(std::move(choi)) {
  if (choi_.rows() != in_ * out_ || choi_.cols() != in_ * out_)
    throw DimensionError("ChoiMap: Choi matrix must be (n*l) x (n*l)");
}

ComplexMatrix ChoiMap::apply(const ComplexMatrix& x) const {
  if (x.rows() != in_ || x.cols() != in_)
    throw DimensionError("ChoiMap::apply: input dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(out_, out_);
  for (Index i = 0; i < in_; ++i)
    for (Index j = 0; j < in_; ++j)
      out += x(i, j) * choi_.block(i * out_, j * out_, out_, out_);
  return out;
}

KrausMap ChoiMap::to_kraus() const {
  const PsdMatrix c{HermitianMatrix(choi_)};
  const EigenDecomposition& e = c.eig();
  const double z = c.zero_threshold();
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) <= z) continue;
    const double s = std::sqrt(e.values(k));
    ComplexMatrix v(in_, out_);
    for (Index i = 0; i < in_; ++i)
      for (Index a = 0; a < out_; ++a)
        v(i, a) = s * std::conj(e.vectors(i * out_ + a, k));
    ops.push_back(std::move(v));
  }
  return KrausMap(in_, out_, std::move(ops));
}

}  // namespace majorlab
