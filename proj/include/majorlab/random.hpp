#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "majorlab/linalg.hpp"

namespace majorlab {

/// Seeded random stream. Every generator in the library takes one of these
/// explicitly so that runs are reproducible shard by shard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi);
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  template <typename T>
  const T& pick(std::span<const T> items) {
    return items[static_cast<std::size_t>(
        uniform_int(0, static_cast<int>(items.size()) - 1))];
  }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 mixing of (seed, stream, index) into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index);
/// FNV-1a, used to turn suite ids into stream numbers.
std::uint64_t hash_name(std::string_view name);

ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian with phase correction).
ComplexMatrix random_unitary(Index n, Rng& rng);

struct PsdDraw {
  /// Nonzero eigenvalues are log-uniform in [lo, hi].
  double lo = 0.02;
  double hi = 2.0;
  /// Number of exact zero eigenvalues; 0 draws a positive definite matrix.
  Index zeros = 0;
};

PsdMatrix random_psd(Index n, Rng& rng, const PsdDraw& draw = {});
/// Positive definite with condition number at most `max_condition`.
PsdMatrix random_pd(Index n, Rng& rng, double max_condition);
Projection random_projection(Index n, Index rank, Rng& rng);

}  // namespace majorlab
