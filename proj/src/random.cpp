#include "majorlab/random.hpp"

#include <algorithm>
#include <cmath>

namespace majorlab {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

Complex Rng::complex_normal() {
  const double s = std::sqrt(0.5);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ stream) ^ index);
}

std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(Index n, Rng& rng) {
  const ComplexMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

PsdMatrix random_psd(Index n, Rng& rng, const PsdDraw& draw) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  const Index nonzero = std::max<Index>(0, n - draw.zeros);
  for (Index i = 0; i < nonzero; ++i) v[i] = rng.log_uniform(draw.lo, draw.hi);
  return PsdMatrix::from_spectrum(random_unitary(n, rng), v);
}

PsdMatrix random_pd(Index n, Rng& rng, double max_condition) {
  const double hi = 2.0;
  const double lo = hi / max_condition;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.log_uniform(lo, hi);
  return PsdMatrix::from_spectrum(random_unitary(n, rng), v);
}

Projection random_projection(Index n, Index rank, Rng& rng) {
  const ComplexMatrix u = random_unitary(n, rng);
  const ComplexMatrix cols = u.leftCols(rank);
  return Projection((cols * cols.adjoint() + (cols * cols.adjoint()).adjoint()) *
                    0.5);
}

}  // namespace majorlab
