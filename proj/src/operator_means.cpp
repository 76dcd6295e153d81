#include "majorlab/operator_means.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace majorlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_reciprocal(double x) {
  if (x == 0.0) return kInf;
  if (std::isinf(x)) return 0.0;
  return 1.0 / x;
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

// PSD by construction up to rounding; clamp instead of rejecting.
PsdMatrix clamped_psd(const ComplexMatrix& m) {
  const EigenDecomposition e = eig_hermitian(HermitianMatrix(symmetrized(m)));
  std::vector<double> v(e.values.data(), e.values.data() + e.values.size());
  for (double& x : v) x = std::max(x, 0.0);
  return PsdMatrix::from_spectrum(e.vectors, v);
}

PsdMatrix direct_mean(const PsdMatrix& a, const PsdMatrix& b,
                      const MeanKernel& f) {
  const EigenDecomposition& e = a.eig();
  const Index n = a.dim();
  RealVector root(n), inv_root(n);
  for (Index i = 0; i < n; ++i) {
    root(i) = std::sqrt(e.values(i));
    inv_root(i) = 1.0 / root(i);
  }
  const ComplexMatrix r = e.vectors * root.cast<Complex>().asDiagonal() *
                          e.vectors.adjoint();
  const ComplexMatrix ri = e.vectors * inv_root.cast<Complex>().asDiagonal() *
                           e.vectors.adjoint();
  const EigenDecomposition ei =
      eig_hermitian(HermitianMatrix(symmetrized(ri * b.matrix() * ri)));
  // For invertible B the inner spectrum is bounded below by
  // lambda_min(B) / lambda_max(A), which can sit under zeta of the inner
  // matrix even though nothing is singular.
  double z = tolerance::zero_threshold * std::max(ei.values(0), 0.0);
  if (b.invertible()) z = std::min(z, 0.5 * b.lambda_min() / a.lambda_max());
  RealVector fv(n);
  for (Index i = 0; i < n; ++i) fv(i) = f(ei.values(i) <= z ? 0.0 : ei.values(i));
  const ComplexMatrix fi =
      ei.vectors * fv.cast<Complex>().asDiagonal() * ei.vectors.adjoint();
  return clamped_psd(r * fi * r);
}

// Both arguments singular; see the header for the formula.
PsdMatrix shorted_mean(const PsdMatrix& a, const PsdMatrix& b,
                       const MeanKernel& f) {
  const double slope = f.limits().slope_at_infinity;
  if (!std::isfinite(slope))
    throw DomainError("mean with " + f.id() + ": infinite slope at infinity");
  const Index n = a.dim();
  const Index r = a.rank();
  const EigenDecomposition& ea = a.eig();
  const ComplexMatrix& bm = b.matrix();
  const double z = tolerance::zero_threshold * b.lambda_max();
  ComplexMatrix result = slope * bm;
  if (r == 0) return clamped_psd(result);

  const ComplexMatrix ur = ea.vectors.leftCols(r);
  ComplexMatrix s = ur.adjoint() * bm * ur;
  if (r < n) {
    const ComplexMatrix uk = ea.vectors.rightCols(n - r);
    const ComplexMatrix b12 = ur.adjoint() * bm * uk;
    const EigenDecomposition e22 =
        eig_hermitian(HermitianMatrix(symmetrized(uk.adjoint() * bm * uk)));
    RealVector inv(e22.values.size());
    for (Index i = 0; i < inv.size(); ++i)
      inv(i) = e22.values(i) > z ? 1.0 / e22.values(i) : 0.0;
    s -= b12 * e22.vectors * inv.cast<Complex>().asDiagonal() *
         e22.vectors.adjoint() * b12.adjoint();
  }
  // drop rounding-level parts of the short; x^alpha amplifies them
  const EigenDecomposition es = eig_hermitian(HermitianMatrix(symmetrized(s)));
  RealVector sv(es.values.size());
  for (Index i = 0; i < sv.size(); ++i)
    sv(i) = es.values(i) > z ? es.values(i) : 0.0;
  RealVector root(r), inv_root(r);
  for (Index i = 0; i < r; ++i) {
    root(i) = std::sqrt(ea.values(i));
    inv_root(i) = 1.0 / root(i);
  }
  const ComplexMatrix c = inv_root.cast<Complex>().asDiagonal() * es.vectors *
                          sv.cast<Complex>().asDiagonal() * es.vectors.adjoint() *
                          inv_root.cast<Complex>().asDiagonal();
  const HermitianMatrix gc = apply_scalar_function(
      clamped_psd(c), [&](double x) { return f(x) - slope * x; });
  result += ur * root.cast<Complex>().asDiagonal() * gc.matrix() *
            root.cast<Complex>().asDiagonal() * ur.adjoint();
  return clamped_psd(result);
}

PsdMatrix shifted(const PsdMatrix& a, double eps) {
  const Index n = a.dim();
  return PsdMatrix(
      HermitianMatrix(a.matrix() + eps * ComplexMatrix::Identity(n, n)));
}

void check_dims(const PsdMatrix& a, const PsdMatrix& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "mean: dimension mismatch " << a.dim() << " vs " << b.dim();
    throw DimensionError(os.str());
  }
}

}  // namespace

// ---- MeanKernel ------------------------------------------------------------

MeanKernel::MeanKernel(std::string id, std::function<double(double)> eval,
                       KernelLimits limits, bool trusted)
    : id_(std::move(id)),
      eval_(std::move(eval)),
      limits_(limits),
      trusted_(trusted) {
  const double one = (*this)(1.0);
  if (std::abs(one - 1.0) > 1e-12)
    throw InvariantError("kernel " + id_ + ": f(1) = " + format_number(one) +
                         ", expected 1");
  double prev = -kInf;
  for (double x : scalar_grid()) {
    const double fx = (*this)(x);
    if (!(fx >= 0.0) || !std::isfinite(fx))
      throw InvariantError("kernel " + id_ + ": negative or non-finite at x = " +
                           format_number(x));
    if (fx < prev - 1e-12 * (1.0 + std::abs(prev)))
      throw InvariantError("kernel " + id_ + ": decreasing near x = " +
                           format_number(x));
    prev = fx;
  }
  condition_i_ = check_condition_i(*this).holds;
}

double MeanKernel::operator()(double x) const {
  if (x == 0.0) return limits_.at_zero;
  if (std::isinf(x)) return limits_.at_infinity;
  return eval_(x);
}

MeanKernel MeanKernel::power(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("power kernel: exponent " + format_number(alpha) +
                      " outside [0, 1]");
  KernelLimits lim;
  if (alpha == 0.0) {
    lim = {1.0, 1.0, 0.0, kInf};
  } else if (alpha == 1.0) {
    lim = {0.0, kInf, 1.0, 1.0};
  } else {
    lim = {0.0, kInf, 0.0, kInf};
  }
  MeanKernel k("power:" + format_number(alpha),
               [alpha](double x) { return std::pow(x, alpha); }, lim, true);
  k.power_ = alpha;
  return k;
}

// ---- ScalarFunction --------------------------------------------------------

ScalarFunction ScalarFunction::power(double p) {
  return {"x^" + format_number(p), [p](double x) {
            if (p == 0.0) return 1.0;
            return x == 0.0 ? 0.0 : std::pow(x, p);
          }};
}

ScalarFunction ScalarFunction::constant(double c) {
  return {format_number(c), [c](double) { return c; }};
}

// ---- grids and catalog -----------------------------------------------------

const std::vector<double>& scalar_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g{0.0};
    for (int i = 0; i < 50; ++i)
      g.push_back(std::pow(10.0, -2.0 + 4.0 * i / 49.0));
    return g;
  }();
  return grid;
}

const std::vector<double>& condition_exponents() {
  static const std::vector<double> r{1.0, 1.5, 2.0, 3.0, 10.0};
  return r;
}

std::vector<MeanKernel> catalog() {
  std::vector<MeanKernel> out;
  for (double a : {0.0, 0.3, 0.5, 0.7, 1.0}) out.push_back(MeanKernel::power(a));
  out.push_back(kernel_by_id("arithmetic"));
  out.push_back(kernel_by_id("harmonic"));
  out.push_back(kernel_by_id("logmean"));
  return out;
}

MeanKernel kernel_by_id(const std::string& id) {
  if (id == "arithmetic")
    return MeanKernel(id, [](double x) { return 0.5 * (1.0 + x); },
                      {0.5, kInf, 0.5, kInf}, true);
  if (id == "harmonic")
    return MeanKernel(id, [](double x) { return 2.0 * x / (1.0 + x); },
                      {0.0, 2.0, 0.0, 2.0}, true);
  if (id == "logmean")
    return MeanKernel(
        id,
        [](double x) {
          const double u = x - 1.0;
          if (std::abs(u) < 1e-5) return 1.0 + u / 2.0 - u * u / 12.0;
          return u / std::log(x);
        },
        {0.0, kInf, 0.0, kInf}, true);
  if (id == "geometric") return MeanKernel::power(0.5);
  constexpr std::string_view prefix = "power:";
  if (id.rfind(prefix, 0) == 0) {
    const std::string tail = id.substr(prefix.size());
    double alpha = 0.0;
    auto res = std::from_chars(tail.data(), tail.data() + tail.size(), alpha);
    if (res.ec != std::errc{} || res.ptr != tail.data() + tail.size())
      throw DomainError("kernel id '" + id + "': malformed exponent");
    return MeanKernel::power(alpha);
  }
  throw DomainError("unknown kernel id '" + id + "'");
}

MeanKernel adjoint(const MeanKernel& f) {
  if (auto a = f.power_exponent()) return MeanKernel::power(*a);
  for (double x : scalar_grid()) {
    if (x > 0.0 && f(1.0 / x) == 0.0)
      throw DomainError("adjoint of " + f.id() + ": f(1/x) = 0 at x = " +
                        format_number(x));
  }
  const KernelLimits& l = f.limits();
  KernelLimits lim{safe_reciprocal(l.at_infinity), safe_reciprocal(l.at_zero),
                   safe_reciprocal(l.slope_at_zero),
                   safe_reciprocal(l.slope_at_infinity)};
  return MeanKernel("adjoint(" + f.id() + ")",
                    [f](double x) { return 1.0 / f(1.0 / x); }, lim,
                    f.trusted());
}

MeanKernel dual(const MeanKernel& f) {
  if (f.limits().at_zero != 0.0)
    throw DomainError("dual of " + f.id() + ": requires f(0) = 0, got " +
                      format_number(f.limits().at_zero));
  if (auto a = f.power_exponent()) return MeanKernel::power(1.0 - *a);
  const KernelLimits& l = f.limits();
  KernelLimits lim{safe_reciprocal(l.slope_at_zero),
                   safe_reciprocal(l.slope_at_infinity),
                   safe_reciprocal(l.at_infinity), safe_reciprocal(l.at_zero)};
  return MeanKernel("dual(" + f.id() + ")",
                    [f](double x) { return x / f(x); }, lim, f.trusted());
}

MeanKernel transpose(const MeanKernel& f) {
  if (auto a = f.power_exponent()) return MeanKernel::power(1.0 - *a);
  const KernelLimits& l = f.limits();
  KernelLimits lim{l.slope_at_infinity, l.slope_at_zero, l.at_zero,
                   l.at_infinity};
  return MeanKernel("transpose(" + f.id() + ")",
                    [f](double x) { return x * f(1.0 / x); }, lim,
                    f.trusted());
}

ConditionReport check_condition_i(const MeanKernel& f) {
  ConditionReport rep;
  rep.worst_margin = kInf;
  for (double x : scalar_grid()) {
    for (double r : condition_exponents()) {
      const double lhs = std::pow(f(x), r);
      const double rhs = f(std::pow(x, r));
      const double margin = (rhs - lhs) / std::max(1.0, std::abs(rhs));
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_x = x;
        rep.worst_r = r;
      }
    }
  }
  rep.holds = rep.worst_margin >= -1e-12;
  return rep;
}

double scalar_mean(double a, double b, const MeanKernel& f) {
  if (a > 0.0) return b == 0.0 ? a * f.limits().at_zero : a * f(b / a);
  return b > 0.0 ? b * f.limits().slope_at_infinity : 0.0;
}

const char* to_string(MeanRoute r) {
  switch (r) {
    case MeanRoute::direct: return "direct";
    case MeanRoute::transposed: return "transposed";
    case MeanRoute::shorted: return "shorted";
    case MeanRoute::epsilon_ladder: return "epsilon_ladder";
  }
  return "?";
}

MeanResult mean_epsilon_path(const PsdMatrix& a, const PsdMatrix& b,
                             const MeanKernel& f) {
  check_dims(a, b);
  std::vector<PsdMatrix> rungs;
  for (double eps : kLadder)
    rungs.push_back(direct_mean(shifted(a, eps), shifted(b, eps), f));
  const double cert =
      (rungs[2].matrix() - rungs[1].matrix()).cwiseAbs().maxCoeff();
  return MeanResult{rungs[2], MeanRoute::epsilon_ladder, cert,
                    cert <= kLadderCertificate};
}

MeanResult mean(const PsdMatrix& a, const PsdMatrix& b, const MeanKernel& f) {
  check_dims(a, b);
  if (a.invertible()) return MeanResult{direct_mean(a, b, f)};
  if (b.invertible())
    return MeanResult{direct_mean(b, a, transpose(f)), MeanRoute::transposed};
  return MeanResult{shorted_mean(a, b, f), MeanRoute::shorted};
}

MeanResult weighted_geometric(const PsdMatrix& a, const PsdMatrix& b,
                              double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("weighted_geometric: alpha = " + format_number(alpha) +
                      " outside [0, 1]");
  check_dims(a, b);
  if (alpha == 0.0) return MeanResult{a};
  if (alpha == 1.0) return MeanResult{b};
  return mean(a, b, MeanKernel::power(alpha));
}

double scalar_geometric(double a, double b, double alpha) {
  const double x = alpha == 1.0 ? 1.0 : std::pow(a, 1.0 - alpha);
  const double y = alpha == 0.0 ? 1.0 : std::pow(b, alpha);
  return x * y;
}

ScalarFunction function_bridge(const ScalarFunction& phi0,
                               const ScalarFunction& phi1,
                               const MeanKernel& f) {
  return {"bridge(" + phi0.name + "," + phi1.name + "," + f.id() + ")",
          [phi0, phi1, f](double x) { return scalar_mean(phi0(x), phi1(x), f); }};
}

ScalarFunction geometric_bridge(const ScalarFunction& phi0,
                                const ScalarFunction& phi1, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("geometric_bridge: alpha outside [0, 1]");
  return {"geobridge(" + phi0.name + "," + phi1.name + "," +
              format_number(alpha) + ")",
          [phi0, phi1, alpha](double x) {
            return scalar_geometric(phi0(x), phi1(x), alpha);
          }};
}

}  // namespace majorlab
