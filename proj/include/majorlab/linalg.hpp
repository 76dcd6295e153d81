#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "majorlab/errors.hpp"

namespace majorlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Scalar real function applied spectrally.
using ScalarFn = std::function<double(double)>;

namespace tolerance {
/// Hermiticity: max |m(i,j) - conj(m(j,i))| <= hermitian * (1 + max |m|).
inline constexpr double hermitian = 1e-12;
/// Negative eigenvalues down to -psd_band * (1 + lambda_1) are clamped to 0.
inline constexpr double psd_band = 1e-10;
/// Eigenvalues <= zero_threshold * lambda_1 count as exact zeros.
inline constexpr double zero_threshold = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm is below this
/// fraction of the full Frobenius norm.
inline constexpr double jacobi_offdiag = 1e-13;
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double projection = 1e-10;
}  // namespace tolerance

/// Largest matrix the eigensolver accepts (C(8,4) = 70 compound spaces).
inline constexpr Index kMaxEigenDim = 70;
/// Largest compound output, C(n,k).
inline constexpr Index kMaxCompoundDim = 70;
inline constexpr Index kMaxCompoundInput = 8;

/// Nonincreasing, nonnegative sequence: eigenvalues of a PSD matrix or
/// singular values of an arbitrary one.
class SpectrumVector {
 public:
  SpectrumVector() = default;
  /// Throws InvariantError if an entry is negative or the order is broken
  /// beyond 1e-12 * (1 + values[0]).
  explicit SpectrumVector(std::vector<double> values);
  SpectrumVector(std::initializer_list<double> values)
      : SpectrumVector(std::vector<double>(values)) {}

  /// Sorts descending and clamps tiny negatives (|x| <= band) to zero.
  static SpectrumVector from_unsorted(std::vector<double> values,
                                      double band = 0.0);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max() const noexcept { return values_.empty() ? 0.0 : values_.front(); }
  double min() const noexcept { return values_.empty() ? 0.0 : values_.back(); }
  const std::vector<double>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  SpectrumVector padded(std::size_t n) const;
  SpectrumVector truncated(std::size_t n) const;
  /// Entrywise x^r with 0^0 = 1.
  SpectrumVector pow(double r) const;
  SpectrumVector scaled(double c) const;

  bool operator==(const SpectrumVector&) const = default;

 private:
  std::vector<double> values_;
};

struct EigenDecomposition {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns match `values`
};

/// Square complex matrix with M = M*, symmetrized on construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  friend class PsdMatrix;

  ComplexMatrix m_;
};

/// Positive semidefinite matrix. Carries its eigendecomposition, computed
/// once at construction; eigenvalues inside the clamping band are set to 0.
class PsdMatrix {
 public:
  explicit PsdMatrix(const ComplexMatrix& m);
  explicit PsdMatrix(const HermitianMatrix& h);
  /// U diag(values) U* for a unitary U and nonnegative values (any order).
  static PsdMatrix from_spectrum(const ComplexMatrix& unitary,
                                 std::span<const double> values);
  static PsdMatrix identity(Index n);
  static PsdMatrix zero(Index n);

  const ComplexMatrix& matrix() const noexcept { return h_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  Index dim() const noexcept { return h_.dim(); }

  const EigenDecomposition& eig() const noexcept { return *eig_; }
  double lambda_max() const noexcept;
  double lambda_min() const noexcept;
  /// zeta = 1e-12 * lambda_1.
  double zero_threshold() const noexcept;
  bool invertible() const noexcept { return lambda_min() > zero_threshold(); }
  Index rank() const noexcept;

 private:
  PsdMatrix(HermitianMatrix h, std::shared_ptr<const EigenDecomposition> e)
      : h_(std::move(h)), eig_(std::move(e)) {}

  HermitianMatrix h_;
  std::shared_ptr<const EigenDecomposition> eig_;
};

/// Orthogonal projection E = E* = E^2.
class Projection {
 public:
  explicit Projection(const ComplexMatrix& e);
  /// Projection onto the column span of `basis` (need not be orthonormal).
  static Projection onto_span(const ComplexMatrix& basis);

  const PsdMatrix& psd() const noexcept { return e_; }
  const ComplexMatrix& matrix() const noexcept { return e_.matrix(); }
  Index dim() const noexcept { return e_.dim(); }
  Index rank() const noexcept { return rank_; }

 private:
  PsdMatrix e_;
  Index rank_ = 0;
};

/// Cyclic complex Jacobi. Throws ConvergenceError carrying the off-diagonal
/// residual if 100 sweeps do not suffice.
EigenDecomposition eig_hermitian(const HermitianMatrix& h);

/// U g(Lambda) U*. Eigenvalues at or below zeta are passed to g as exact 0.
/// Throws DomainError naming the eigenvalue if g returns a non-finite value.
HermitianMatrix apply_scalar_function(const PsdMatrix& a, const ScalarFn& g);
HermitianMatrix apply_scalar_function(const HermitianMatrix& h,
                                      const ScalarFn& g);

/// A^p with 0^p = 0 for p > 0 and A^0 = I for every A, singular or not.
PsdMatrix fractional_power(const PsdMatrix& a, double p);

/// Matrix logarithm of a positive definite matrix.
HermitianMatrix log_psd(const PsdMatrix& a);
/// Matrix exponential of a Hermitian matrix.
PsdMatrix exp_hermitian(const HermitianMatrix& h);

/// Generalized inverse of X on the range of E.
PsdMatrix pseudo_inverse_on_range(const PsdMatrix& x, const Projection& e);

/// k-th compound: entry (I, J) is det A[I, J], index sets in lex order.
ComplexMatrix compound(const ComplexMatrix& a, int k);

SpectrumVector eigenvalues_desc(const PsdMatrix& a);

/// Square roots of the eigenvalues of X*X, length min(rows, cols).
SpectrumVector singular_values(const ComplexMatrix& x);

/// s(x^p y^q) for PSD x, y. Computed as the singular values of
/// D_x^p (U_x* U_y) D_y^q, which keeps small values relatively accurate.
/// Eigenvalues at or below zeta are exact zeros; p or q < 0 requires the
/// matching factor to be invertible.
SpectrumVector product_singular_values(const PsdMatrix& x, double p,
                                       const PsdMatrix& y, double q);
/// lambda(x^{1/2} y x^{1/2}) = s(x^{1/2} y^{1/2})^2.
SpectrumVector sandwich_spectrum(const PsdMatrix& x, const PsdMatrix& y);

// ---- small helpers shared across modules -------------------------------

/// x^{1/2} y x^{1/2}
PsdMatrix sandwich(const PsdMatrix& x, const PsdMatrix& y);

double operator_norm(const PsdMatrix& a);
double operator_norm(const ComplexMatrix& x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_power(const ComplexMatrix& a, int k);

std::size_t binomial(std::size_t n, std::size_t k);
/// All k-subsets of {0..n-1}, each ascending, in lexicographic order.
std::vector<std::vector<int>> index_sets(int n, int k);

/// Elementary symmetric polynomial e_k of `values`.
double elementary_symmetric(std::span<const double> values, int k);

bool is_hermitian(const ComplexMatrix& m);

}  // namespace majorlab
