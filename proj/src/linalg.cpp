#include "majorlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace majorlab {
namespace {

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

EigenDecomposition jacobi(ComplexMatrix a) {
  const Index n = a.rows();
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  const double threshold = tolerance::jacobi_offdiag * a.norm();

  int sweep = 0;
  double off = offdiag_norm(a);
  while (off > threshold) {
    if (sweep++ == tolerance::jacobi_max_sweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge in "
         << tolerance::jacobi_max_sweeps
         << " sweeps; off-diagonal residual " << off;
      throw ConvergenceError(os.str(), off);
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) block.
        const Complex phase = std::conj(apq / mag);
        const Complex gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;

        for (Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Index k = 0; k < n; ++k) {
          const Complex ukp = u(k, p), ukq = u(k, q);
          u(k, p) = ukp * gpp + ukq * gqp;
          u(k, q) = ukp * gpq + ukq * gqq;
        }
      }
    }
    off = offdiag_norm(a);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return a(i, i).real() > a(j, j).real();
  });
  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = u.col(order[i]);
  }
  return out;
}

ComplexMatrix reconstruct(const ComplexMatrix& u, const RealVector& values) {
  return u * values.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace

// ---- SpectrumVector ------------------------------------------------------

SpectrumVector::SpectrumVector(std::vector<double> values)
    : values_(std::move(values)) {
  const double slack = 1e-12 * (1.0 + (values_.empty() ? 0.0 : values_[0]));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "spectrum entry " << i << " is " << values_[i]
         << "; expected a finite nonnegative value";
      throw InvariantError(os.str());
    }
    if (i + 1 < values_.size() && values_[i] < values_[i + 1] - slack) {
      std::ostringstream os;
      os << "spectrum is not nonincreasing at index " << i;
      throw InvariantError(os.str());
    }
  }
}

SpectrumVector SpectrumVector::from_unsorted(std::vector<double> values,
                                             double band) {
  for (double& v : values)
    if (v < 0.0 && v >= -band) v = 0.0;
  std::sort(values.begin(), values.end(), std::greater<>());
  return SpectrumVector(std::move(values));
}

SpectrumVector SpectrumVector::padded(std::size_t n) const {
  std::vector<double> v = values_;
  if (v.size() < n) v.resize(n, 0.0);
  return SpectrumVector(std::move(v));
}

SpectrumVector SpectrumVector::truncated(std::size_t n) const {
  std::vector<double> v(values_.begin(),
                        values_.begin() + std::min(n, values_.size()));
  return SpectrumVector(std::move(v));
}

SpectrumVector SpectrumVector::pow(double r) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (r == 0.0) ? 1.0 : std::pow(values_[i], r);
  return SpectrumVector(std::move(v));
}

SpectrumVector SpectrumVector::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return SpectrumVector(std::move(v));
}

// ---- HermitianMatrix -----------------------------------------------------

bool is_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return dev <= tolerance::hermitian * (1.0 + max_abs_entry(m));
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  require_square(m, "HermitianMatrix");
  if (!is_hermitian(m)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |m - m*| = "
       << (m - m.adjoint()).cwiseAbs().maxCoeff();
    throw InvariantError(os.str());
  }
  m_ = symmetrized(m);
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n), Trusted{});
}

// ---- PsdMatrix -----------------------------------------------------------

PsdMatrix::PsdMatrix(const ComplexMatrix& m) : PsdMatrix(HermitianMatrix(m)) {}

PsdMatrix::PsdMatrix(const HermitianMatrix& h) : h_(h) {
  auto e = std::make_shared<EigenDecomposition>(eig_hermitian(h));
  const Index n = e->values.size();
  const double top = std::max(0.0, e->values(0));
  const double floor = -tolerance::psd_band * (1.0 + top);
  bool clamped = false;
  for (Index i = 0; i < n; ++i) {
    if (e->values(i) < floor) {
      std::ostringstream os;
      os << "matrix is not positive semidefinite: eigenvalue " << e->values(i)
         << " below clamping band " << floor;
      throw InvariantError(os.str());
    }
    if (e->values(i) < 0.0) {
      e->values(i) = 0.0;
      clamped = true;
    }
  }
  if (clamped)
    h_ = HermitianMatrix(symmetrized(reconstruct(e->vectors, e->values)),
                         HermitianMatrix::Trusted{});
  eig_ = std::move(e);
}

PsdMatrix PsdMatrix::from_spectrum(const ComplexMatrix& unitary,
                                   std::span<const double> values) {
  require_square(unitary, "PsdMatrix::from_spectrum");
  if (static_cast<Index>(values.size()) != unitary.cols())
    throw DimensionError("from_spectrum: value count does not match unitary");
  RealVector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0))
      throw InvariantError("from_spectrum: negative eigenvalue");
    v(static_cast<Index>(i)) = values[i];
  }
  return PsdMatrix(HermitianMatrix(symmetrized(reconstruct(unitary, v)),
                                   HermitianMatrix::Trusted{}));
}

PsdMatrix PsdMatrix::identity(Index n) {
  auto e = std::make_shared<EigenDecomposition>(
      EigenDecomposition{RealVector::Ones(n), ComplexMatrix::Identity(n, n)});
  return PsdMatrix(HermitianMatrix::identity(n), std::move(e));
}

PsdMatrix PsdMatrix::zero(Index n) {
  auto e = std::make_shared<EigenDecomposition>(
      EigenDecomposition{RealVector::Zero(n), ComplexMatrix::Identity(n, n)});
  return PsdMatrix(HermitianMatrix::zero(n), std::move(e));
}

double PsdMatrix::lambda_max() const noexcept { return eig_->values(0); }

double PsdMatrix::lambda_min() const noexcept {
  return eig_->values(eig_->values.size() - 1);
}

double PsdMatrix::zero_threshold() const noexcept {
  return tolerance::zero_threshold * lambda_max();
}

Index PsdMatrix::rank() const noexcept {
  const double z = zero_threshold();
  Index r = 0;
  for (Index i = 0; i < eig_->values.size(); ++i)
    if (eig_->values(i) > z) ++r;
  return r;
}

// ---- Projection ----------------------------------------------------------

Projection::Projection(const ComplexMatrix& e) : e_(e) {
  const ComplexMatrix& m = e_.matrix();
  const double idem = (m * m - m).norm();
  if (idem > tolerance::projection * (1.0 + m.norm()))
    throw InvariantError("projection: E^2 != E");
  const RealVector& v = e_.eig().values;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > tolerance::projection &&
        std::abs(v(i) - 1.0) > tolerance::projection)
      throw InvariantError("projection: eigenvalue not in {0, 1}");
  }
  rank_ = static_cast<Index>(std::llround(m.trace().real()));
}

Projection Projection::onto_span(const ComplexMatrix& basis) {
  Eigen::HouseholderQR<ComplexMatrix> qr(basis);
  const Index r = std::min(basis.rows(), basis.cols());
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(basis.rows(), r);
  return Projection(symmetrized(q * q.adjoint()));
}

// ---- spectral operations -------------------------------------------------

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
  if (h.dim() > kMaxEigenDim) {
    std::ostringstream os;
    os << "eig_hermitian: dimension " << h.dim() << " exceeds cap "
       << kMaxEigenDim;
    throw DimensionError(os.str());
  }
  return jacobi(h.matrix());
}

namespace {

HermitianMatrix apply_on(const EigenDecomposition& e, double zero_below,
                         const ScalarFn& g) {
  const Index n = e.values.size();
  RealVector gv(n);
  for (Index i = 0; i < n; ++i) {
    const double x = e.values(i) <= zero_below && e.values(i) >= 0.0
                         ? 0.0
                         : e.values(i);
    gv(i) = g(x);
    if (!std::isfinite(gv(i))) {
      std::ostringstream os;
      os << "scalar function undefined at eigenvalue " << x;
      throw DomainError(os.str());
    }
  }
  return HermitianMatrix(symmetrized(reconstruct(e.vectors, gv)));
}

}  // namespace

HermitianMatrix apply_scalar_function(const PsdMatrix& a, const ScalarFn& g) {
  return apply_on(a.eig(), a.zero_threshold(), g);
}

HermitianMatrix apply_scalar_function(const HermitianMatrix& h,
                                      const ScalarFn& g) {
  return apply_on(eig_hermitian(h), -1.0, g);
}

PsdMatrix fractional_power(const PsdMatrix& a, double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "fractional_power: exponent " << p << " must be >= 0";
    throw DomainError(os.str());
  }
  if (p == 0.0) return PsdMatrix::identity(a.dim());
  if (p == 1.0) return a;
  const EigenDecomposition& e = a.eig();
  const double z = a.zero_threshold();
  std::vector<double> v(static_cast<std::size_t>(e.values.size()));
  for (Index i = 0; i < e.values.size(); ++i)
    v[i] = e.values(i) <= z ? 0.0 : std::pow(e.values(i), p);
  return PsdMatrix::from_spectrum(e.vectors, v);
}

HermitianMatrix log_psd(const PsdMatrix& a) {
  if (!a.invertible()) {
    std::ostringstream os;
    os << "log: matrix is singular, smallest eigenvalue " << a.lambda_min();
    throw DomainError(os.str());
  }
  return apply_scalar_function(a, [](double x) { return std::log(x); });
}

PsdMatrix exp_hermitian(const HermitianMatrix& h) {
  return PsdMatrix(
      apply_scalar_function(h, [](double x) { return std::exp(x); }));
}

PsdMatrix pseudo_inverse_on_range(const PsdMatrix& x, const Projection& e) {
  if (x.dim() != e.dim())
    throw DimensionError("pseudo_inverse_on_range: dimension mismatch");
  const Index n = x.dim();
  const ComplexMatrix outside =
      (ComplexMatrix::Identity(n, n) - e.matrix()) * x.matrix();
  if (outside.norm() > 1e-10 * (1.0 + x.matrix().norm()))
    throw InvariantError(
        "pseudo_inverse_on_range: range of X is not inside range of E");
  if (x.rank() < e.rank()) {
    std::ostringstream os;
    os << "pseudo_inverse_on_range: rank(X) = " << x.rank()
       << " < rank(E) = " << e.rank();
    throw RankError(os.str());
  }
  const double z = x.zero_threshold();
  const EigenDecomposition& d = x.eig();
  std::vector<double> inv(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) inv[i] = d.values(i) > z ? 1.0 / d.values(i) : 0.0;
  return PsdMatrix::from_spectrum(d.vectors, inv);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> index_sets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

ComplexMatrix compound(const ComplexMatrix& a, int k) {
  require_square(a, "compound");
  const Index n = a.rows();
  if (k < 1 || k > n) {
    std::ostringstream os;
    os << "compound: k = " << k << " outside [1, " << n << "]";
    throw DomainError(os.str());
  }
  const std::size_t size = binomial(static_cast<std::size_t>(n),
                                    static_cast<std::size_t>(k));
  if (n > kMaxCompoundInput || static_cast<Index>(size) > kMaxCompoundDim) {
    std::ostringstream os;
    os << "compound: input " << n << " / output " << size
       << " exceeds the supported size";
    throw DimensionError(os.str());
  }
  const auto sets = index_sets(static_cast<int>(n), k);
  ComplexMatrix out(static_cast<Index>(size), static_cast<Index>(size));
  ComplexMatrix minor(k, k);
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (std::size_t c = 0; c < sets.size(); ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = a(sets[r][i], sets[c][j]);
      out(static_cast<Index>(r), static_cast<Index>(c)) =
          k == 1 ? minor(0, 0) : minor.partialPivLu().determinant();
    }
  }
  return out;
}

SpectrumVector eigenvalues_desc(const PsdMatrix& a) {
  const RealVector& v = a.eig().values;
  return SpectrumVector(std::vector<double>(v.data(), v.data() + v.size()));
}

SpectrumVector singular_values(const ComplexMatrix& x) {
  if (x.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const RealVector& v = svd.singularValues();
  return SpectrumVector::from_unsorted(
      std::vector<double>(v.data(), v.data() + v.size()));
}

namespace {

// Spectral factors of a^p: eigenvalues at or below zeta are exact zeros,
// 0^0 = 1, negative p needs an invertible a.
RealVector power_factors(const PsdMatrix& a, double p) {
  const RealVector& v = a.eig().values;
  const double z = a.zero_threshold();
  RealVector d(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double x = v(i) <= z ? 0.0 : v(i);
    if (p == 0.0) {
      d(i) = 1.0;
    } else if (x == 0.0) {
      if (p < 0.0) throw DomainError("negative power of a singular matrix");
      d(i) = 0.0;
    } else {
      d(i) = std::pow(x, p);
    }
  }
  return d;
}

}  // namespace

SpectrumVector product_singular_values(const PsdMatrix& x, double p,
                                       const PsdMatrix& y, double q) {
  if (x.dim() != y.dim())
    throw DimensionError("product_singular_values: dimension mismatch");
  const RealVector dx = power_factors(x, p);
  const RealVector dy = power_factors(y, q);
  ComplexMatrix g = x.eig().vectors.adjoint() * y.eig().vectors;
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) g(i, j) *= dx(i) * dy(j);
  return singular_values(g);
}

SpectrumVector sandwich_spectrum(const PsdMatrix& x, const PsdMatrix& y) {
  const SpectrumVector s = product_singular_values(x, 0.5, y, 0.5);
  std::vector<double> v(s.begin(), s.end());
  for (double& e : v) e *= e;
  return SpectrumVector(std::move(v));
}

PsdMatrix sandwich(const PsdMatrix& x, const PsdMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionError("sandwich: dimension mismatch");
  const PsdMatrix root = fractional_power(x, 0.5);
  return PsdMatrix(symmetrized(root.matrix() * y.matrix() * root.matrix()));
}

double operator_norm(const PsdMatrix& a) { return a.lambda_max(); }

double operator_norm(const ComplexMatrix& x) {
  const SpectrumVector s = singular_values(x);
  return s.max();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& a, int k) {
  if (k < 1) throw DomainError("tensor_power: k must be >= 1");
  ComplexMatrix out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

double elementary_symmetric(std::span<const double> values, int k) {
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double x : values)
    for (int j = k; j >= 1; --j) e[j] += x * e[j - 1];
  return e[k];
}

}  // namespace majorlab
