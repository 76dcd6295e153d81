#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "majorlab/linalg.hpp"

namespace majorlab {

/// Boundary behaviour of a representing function f. These are exact limits
/// (possibly +inf) supplied with the kernel, so that the adjoint, dual and
/// transposed kernels have exact boundary values as well.
struct KernelLimits {
  double at_zero = 0.0;            // f(0+)
  double at_infinity = 0.0;        // lim_{x->inf} f(x)
  double slope_at_infinity = 0.0;  // lim_{x->inf} f(x)/x
  double slope_at_zero = 0.0;      // lim_{x->0+} f(x)/x
};

/// Representing function of a Kubo-Ando mean: nonnegative, nondecreasing,
/// normalized by f(1) = 1. Construction checks normalization and
/// monotonicity on the scalar grid and evaluates condition (i) numerically.
///
/// Catalog kernels are operator monotone by the standard theory; user
/// kernels are accepted but reported as unverified.
class MeanKernel {
 public:
  MeanKernel(std::string id, std::function<double(double)> eval,
             KernelLimits limits, bool trusted = false);

  const std::string& id() const noexcept { return id_; }
  /// f(x); x == 0 and x == inf return the stored limits.
  double operator()(double x) const;
  const KernelLimits& limits() const noexcept { return limits_; }
  bool satisfies_condition_i() const noexcept { return condition_i_; }
  bool trusted() const noexcept { return trusted_; }
  /// Set for x^alpha kernels; adjoint and dual use it to stay exact.
  std::optional<double> power_exponent() const noexcept { return power_; }

  static MeanKernel power(double alpha);

 private:
  std::string id_;
  std::function<double(double)> eval_;
  KernelLimits limits_;
  bool trusted_ = false;
  bool condition_i_ = false;
  std::optional<double> power_;
};

/// Nonnegative scalar function on [0, inf).
struct ScalarFunction {
  std::string name;
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }
  static ScalarFunction power(double p);
  static ScalarFunction constant(double c);
};

/// Scalar grid used by every kernel check: {0} plus 50 log-spaced points
/// on [1e-2, 1e2].
const std::vector<double>& scalar_grid();
/// Exponents r used by the condition (i) check.
const std::vector<double>& condition_exponents();

/// power:{0, 0.3, 0.5, 0.7, 1}, arithmetic, harmonic, logmean.
std::vector<MeanKernel> catalog();
/// "power:<alpha>", "arithmetic", "harmonic", "logmean", "geometric".
MeanKernel kernel_by_id(const std::string& id);

/// f*(x) = 1 / f(1/x).
MeanKernel adjoint(const MeanKernel& f);
/// f^perp(x) = x / f(x); requires f(0) = 0.
MeanKernel dual(const MeanKernel& f);
/// x f(1/x): A sigma_f B = B sigma_{transpose f} A.
MeanKernel transpose(const MeanKernel& f);

struct ConditionReport {
  bool holds = false;
  /// min over the grid of (f(x^r) - f(x)^r) / max(1, f(x^r)).
  double worst_margin = 0.0;
  double worst_x = 0.0;
  double worst_r = 1.0;
};

/// f(x)^r <= f(x^r) on the scalar grid for r in condition_exponents().
ConditionReport check_condition_i(const MeanKernel& f);

/// Scalar Kubo-Ando mean a sigma_f b, including the exact boundary limits
/// (a = 0 uses the slope of f at infinity).
double scalar_mean(double a, double b, const MeanKernel& f);

enum class MeanRoute { direct, transposed, shorted, epsilon_ladder };
const char* to_string(MeanRoute r);

struct MeanResult {
  PsdMatrix value;
  MeanRoute route = MeanRoute::direct;
  /// Max entrywise change between the last two ladder rungs (0 otherwise).
  double certificate = 0.0;
  bool converged = true;
};

inline constexpr double kLadderCertificate = 1e-5;
inline constexpr double kLadder[3] = {1e-4, 1e-6, 1e-8};

/// A sigma_f B. Uses A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} when A is
/// invertible and the transposed formula when only B is. When both are
/// singular, f is split as b x + g with b the slope of f at infinity, and
///   A sigma_f B = b B + A^{1/2} g(A^{+1/2} [B : ran A] A^{+1/2}) A^{1/2},
/// where [B : ran A] is the shorted operator of B onto the range of A. This
/// is the exact limit of (A + eps I) sigma_f (B + eps I) as eps -> 0.
MeanResult mean(const PsdMatrix& a, const PsdMatrix& b, const MeanKernel& f);
/// (A + eps I) sigma_f (B + eps I) for eps in {1e-4, 1e-6, 1e-8}; the last
/// rung is returned, converged when the last two rungs differ by at most
/// kLadderCertificate entrywise. A cross-check for the exact routes.
MeanResult mean_epsilon_path(const PsdMatrix& a, const PsdMatrix& b,
                             const MeanKernel& f);

/// A #_alpha B, alpha in [0, 1].
MeanResult weighted_geometric(const PsdMatrix& a, const PsdMatrix& b,
                              double alpha);
/// Scalar a #_alpha b = a^{1-alpha} b^alpha (0^0 = 1).
double scalar_geometric(double a, double b, double alpha);

/// Pointwise phi0 sigma_f phi1.
ScalarFunction function_bridge(const ScalarFunction& phi0,
                               const ScalarFunction& phi1, const MeanKernel& f);
/// Pointwise phi0^{1-alpha} phi1^alpha with 0^0 = 1 in each factor.
ScalarFunction geometric_bridge(const ScalarFunction& phi0,
                                const ScalarFunction& phi1, double alpha);

}  // namespace majorlab
