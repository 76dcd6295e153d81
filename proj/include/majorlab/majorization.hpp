#pragma once

#include <span>
#include <string>
#include <vector>

#include "majorlab/linalg.hpp"

namespace majorlab {

enum class Verdict { holds, borderline, fails };
const char* to_string(Verdict v);

inline constexpr double kDefaultTol = 1e-8;
/// Margins in (-kTieBand, 0) are rounding noise around an exact tie and
/// count as "holds".
inline constexpr double kTieBand = 1e-12;

/// Classifies a single margin against tol.
Verdict classify_margin(double margin, double tol);
/// Worse of two verdicts.
Verdict worse(Verdict a, Verdict b);

enum class Order { weak_log, log, log_super };
const char* to_string(Order o);

struct MajorizationRow {
  int k = 0;
  /// Sum of logs of the (scaled) partial products; -inf for zero-class.
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  /// >= 0 when the k-th inequality holds.
  double margin = 0.0;
};

struct MajorizationReport {
  Order order = Order::weak_log;
  Verdict verdict = Verdict::holds;
  std::vector<MajorizationRow> per_k;
  double tol = kDefaultTol;
  /// Smallest margin over all rows.
  double worst_margin = 0.0;
  /// Log order only: |sum log a - sum log b| at k = n (0 when both are
  /// zero-class, +inf when exactly one is).
  double equality_gap = 0.0;
};

/// prod_{i<=k} a_i <= prod_{i<=k} b_i for every k, in the log domain after
/// scaling both sequences by 1/max(a_1, b_1). Entries at or below 1e-12
/// times their own sequence's first entry are zero-class. The shorter
/// sequence is padded with zeros.
MajorizationReport weak_log_majorize(const SpectrumVector& a,
                                     const SpectrumVector& b,
                                     double tol = kDefaultTol);
/// Weak order plus equality of the full products.
MajorizationReport log_majorize(const SpectrumVector& a,
                                const SpectrumVector& b,
                                double tol = kDefaultTol);
/// Tail products: prod_{i>n-k} a_i >= prod_{i>n-k} b_i for every k.
MajorizationReport log_supermajorize(const SpectrumVector& a,
                                     const SpectrumVector& b,
                                     double tol = kDefaultTol);
MajorizationReport majorize(Order order, const SpectrumVector& a,
                            const SpectrumVector& b, double tol = kDefaultTol);

/// Entrywise a_i^{1-alpha} b_i^alpha with 0^0 = 1. Entries at or below
/// 1e-12 times their own sequence's maximum are treated as exact zeros. If
/// the result is not nonincreasing it is re-sorted and `anomaly` (when given) is set.
SpectrumVector power_blend(const SpectrumVector& a, const SpectrumVector& b,
                           double alpha, bool* anomaly = nullptr);

/// Entrywise a_i b_i of two nonincreasing sequences of equal length.
SpectrumVector entrywise_product(const SpectrumVector& a,
                                 const SpectrumVector& b);

/// sum_{i<=k} a_i <= sum_{i<=k} b_i + tol for every k.
bool weak_majorize_sum(const SpectrumVector& a, const SpectrumVector& b,
                       double tol = kDefaultTol);

struct NormSpec {
  enum class Kind { ky_fan, schatten, op };
  Kind kind = Kind::op;
  int k = 1;
  double p = 1.0;

  static NormSpec ky_fan(int k);
  static NormSpec schatten(double p);
  static NormSpec operator_norm() { return NormSpec{}; }
  static NormSpec trace() { return schatten(1.0); }

  /// "operator", "trace", "ky_fan:<k>", "schatten:<p>".
  static NormSpec parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const NormSpec&) const = default;
};

/// Symmetric gauge function of a nonnegative, nonincreasing vector.
double gauge(std::span<const double> s, const NormSpec& spec);
/// psi(s(X)). A Ky Fan k beyond min(rows, cols) is clamped.
double gauge_norm(const ComplexMatrix& x, const NormSpec& spec);
/// Same norm evaluated from eigenvalues of a PSD matrix.
double gauge_norm(const PsdMatrix& a, const NormSpec& spec);

struct AntiNormSpec {
  NormSpec base;
  double p = 1.0;
};

/// ||A^{-p}||^{-1/p} when A is invertible, 0 otherwise.
double derived_anti_norm(const PsdMatrix& a, const AntiNormSpec& spec);
/// Same, from the eigenvalues; lambda_n <= 1e-12 lambda_1 counts as singular.
double derived_anti_norm(const SpectrumVector& lambda, const AntiNormSpec& spec);
/// Anti-norm of diag(lambda^t). Invertibility is decided on lambda itself, so
/// large t does not push a well-conditioned spectrum below the zero threshold.
double derived_anti_norm_of_power(const SpectrumVector& lambda, double t,
                                  const AntiNormSpec& spec);

}  // namespace majorlab
