#pragma once

// Reference computations for the tests. They use Eigen's own Hermitian
// solver and plain formulas, never the library code under test.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;

// Descending eigenvalues.
inline Vec eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) * 0.5);
  return es.eigenvalues().reverse();
}

inline Mat power(const Mat& h, double p) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) * 0.5);
  Vec d = es.eigenvalues();
  // rounding noise on a zero eigenvalue would survive a fractional power
  const double z = 1e-12 * std::max(d.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) <= z ? 0.0 : std::pow(d(i), p);
  return es.eigenvectors() * d.cast<std::complex<double>>().asDiagonal() *
         es.eigenvectors().adjoint();
}

// A #_alpha B for invertible A.
inline Mat geometric(const Mat& a, const Mat& b, double alpha) {
  const Mat h = power(a, 0.5);
  const Mat hi = h.inverse();
  return h * power(hi * b * hi, alpha) * h;
}

// Descending singular values (divide-and-conquer SVD).
inline Vec singular_values(const Mat& x) { return Eigen::BDCSVD<Mat>(x).singularValues(); }

class Gen {
 public:
  explicit Gen(unsigned seed) : eng_(seed) {}
  double normal() { return nd_(eng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  Mat gaussian(Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {normal(), normal()};
    return m;
  }
  Mat hermitian(Eigen::Index n) {
    const Mat g = gaussian(n, n);
    return (g + g.adjoint()) * 0.5;
  }
  // G G* + shift I
  Mat pd(Eigen::Index n, double shift = 0.1) {
    const Mat g = gaussian(n, n);
    return g * g.adjoint() / double(n) + shift * Mat::Identity(n, n);
  }
  // rank-deficient PSD
  Mat psd_rank(Eigen::Index n, Eigen::Index rank) {
    const Mat g = gaussian(n, rank);
    return g * g.adjoint();
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> nd_{0.0, 1.0};
};

}  // namespace oracle
