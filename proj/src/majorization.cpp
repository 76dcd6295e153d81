#include "majorlab/majorization.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace majorlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scaled {
  std::vector<double> a, b;
};

// Pads to a common length and scales by 1/max(a_1, b_1). Entries at or
// below 1e-12 times their own sequence's first entry become exact zeros.
Scaled normalize(const SpectrumVector& a, const SpectrumVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Scaled s{a.padded(n).values(), b.padded(n).values()};
  double top = std::max(a.max(), b.max());
  if (!(top > 0.0)) top = 1.0;
  for (auto* v : {&s.a, &s.b}) {
    const double z = tolerance::zero_threshold * (v->empty() ? 0.0 : v->front());
    for (double& x : *v) x = x <= z ? 0.0 : x / top;
  }
  return s;
}

double log_or_zero_class(double x) { return x > 0.0 ? std::log(x) : -kInf; }

void finish(MajorizationReport& rep) {
  rep.worst_margin = kInf;
  rep.verdict = Verdict::holds;
  for (const auto& row : rep.per_k) {
    rep.worst_margin = std::min(rep.worst_margin, row.margin);
    rep.verdict = worse(rep.verdict, classify_margin(row.margin, rep.tol));
  }
  if (rep.per_k.empty()) rep.worst_margin = 0.0;
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::borderline: return "borderline";
    case Verdict::fails: return "fails";
  }
  return "?";
}

const char* to_string(Order o) {
  switch (o) {
    case Order::weak_log: return "weak_log";
    case Order::log: return "log";
    case Order::log_super: return "log_super";
  }
  return "?";
}

Verdict classify_margin(double margin, double tol) {
  if (std::isnan(margin) || margin < -tol) return Verdict::fails;
  if (margin < -kTieBand) return Verdict::borderline;
  return Verdict::holds;
}

Verdict worse(Verdict a, Verdict b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

MajorizationReport weak_log_majorize(const SpectrumVector& a,
                                     const SpectrumVector& b, double tol) {
  const Scaled s = normalize(a, b);
  MajorizationReport rep;
  rep.order = Order::weak_log;
  rep.tol = tol;
  double la = 0.0, lb = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    la += log_or_zero_class(s.a[k]);
    lb += log_or_zero_class(s.b[k]);
    double margin;
    if (la == -kInf)
      margin = kInf;
    else if (lb == -kInf)
      margin = -kInf;
    else
      margin = lb - la;
    rep.per_k.push_back({static_cast<int>(k + 1), la, lb, margin});
  }
  finish(rep);
  return rep;
}

MajorizationReport log_majorize(const SpectrumVector& a,
                                const SpectrumVector& b, double tol) {
  MajorizationReport rep = weak_log_majorize(a, b, tol);
  rep.order = Order::log;
  if (rep.per_k.empty()) return rep;
  const auto& last = rep.per_k.back();
  const bool za = last.lhs_log == -kInf;
  const bool zb = last.rhs_log == -kInf;
  if (za && zb)
    rep.equality_gap = 0.0;
  else if (za || zb)
    rep.equality_gap = kInf;
  else
    rep.equality_gap = std::abs(last.lhs_log - last.rhs_log);
  if (rep.equality_gap > tol) rep.verdict = Verdict::fails;
  return rep;
}

MajorizationReport log_supermajorize(const SpectrumVector& a,
                                     const SpectrumVector& b, double tol) {
  const Scaled s = normalize(a, b);
  MajorizationReport rep;
  rep.order = Order::log_super;
  rep.tol = tol;
  const std::size_t n = s.a.size();
  double la = 0.0, lb = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    la += log_or_zero_class(s.a[n - k]);
    lb += log_or_zero_class(s.b[n - k]);
    double margin;
    if (lb == -kInf)
      margin = kInf;
    else if (la == -kInf)
      margin = -kInf;
    else
      margin = la - lb;
    rep.per_k.push_back({static_cast<int>(k), la, lb, margin});
  }
  finish(rep);
  return rep;
}

MajorizationReport majorize(Order order, const SpectrumVector& a,
                            const SpectrumVector& b, double tol) {
  switch (order) {
    case Order::weak_log: return weak_log_majorize(a, b, tol);
    case Order::log: return log_majorize(a, b, tol);
    case Order::log_super: return log_supermajorize(a, b, tol);
  }
  throw DomainError("majorize: unknown order");
}

SpectrumVector power_blend(const SpectrumVector& a, const SpectrumVector& b,
                           double alpha, bool* anomaly) {
  if (a.size() != b.size())
    throw DimensionError("power_blend: lengths differ");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("power_blend: alpha outside [0, 1]");
  const double za = tolerance::zero_threshold * a.max();
  const double zb = tolerance::zero_threshold * b.max();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] <= za ? 0.0 : a[i];
    const double y = b[i] <= zb ? 0.0 : b[i];
    const double fx = alpha == 1.0 ? 1.0 : std::pow(x, 1.0 - alpha);
    const double fy = alpha == 0.0 ? 1.0 : std::pow(y, alpha);
    out[i] = fx * fy;
  }
  const bool sorted = std::is_sorted(out.rbegin(), out.rend());
  if (anomaly) *anomaly = !sorted;
  if (!sorted) std::sort(out.begin(), out.end(), std::greater<>());
  return SpectrumVector(std::move(out));
}

SpectrumVector entrywise_product(const SpectrumVector& a,
                                 const SpectrumVector& b) {
  if (a.size() != b.size())
    throw DimensionError("entrywise_product: lengths differ");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return SpectrumVector::from_unsorted(std::move(out));
}

bool weak_majorize_sum(const SpectrumVector& a, const SpectrumVector& b,
                       double tol) {
  const std::size_t n = std::max(a.size(), b.size());
  const SpectrumVector pa = a.padded(n), pb = b.padded(n);
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += pa[k];
    sb += pb[k];
    if (sa > sb + tol) return false;
  }
  return true;
}

NormSpec NormSpec::ky_fan(int k) {
  if (k < 1) throw DomainError("ky_fan: k must be >= 1");
  NormSpec s;
  s.kind = Kind::ky_fan;
  s.k = k;
  return s;
}

NormSpec NormSpec::schatten(double p) {
  if (!(p >= 1.0) || std::isinf(p))
    throw DomainError("schatten: p must be a finite number >= 1");
  NormSpec s;
  s.kind = Kind::schatten;
  s.p = p;
  return s;
}

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "operator") return operator_norm();
  if (text == "trace") return trace();
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw DomainError("norm spec '" + text + "': unknown kind");
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  const char* first = tail.data();
  const char* last = tail.data() + tail.size();
  if (head == "ky_fan") {
    int k = 0;
    auto res = std::from_chars(first, last, k);
    if (res.ec != std::errc{} || res.ptr != last)
      throw DomainError("norm spec '" + text + "': malformed k");
    return ky_fan(k);
  }
  if (head == "schatten") {
    double p = 0.0;
    auto res = std::from_chars(first, last, p);
    if (res.ec != std::errc{} || res.ptr != last)
      throw DomainError("norm spec '" + text + "': malformed p");
    return schatten(p);
  }
  throw DomainError("norm spec '" + text + "': unknown kind");
}

std::string NormSpec::to_string() const {
  switch (kind) {
    case Kind::op: return "operator";
    case Kind::ky_fan: return "ky_fan:" + std::to_string(k);
    case Kind::schatten:
      return p == 1.0 ? "trace" : "schatten:" + format_number(p);
  }
  return "?";
}

double gauge(std::span<const double> s, const NormSpec& spec) {
  if (s.empty()) return 0.0;
  switch (spec.kind) {
    case NormSpec::Kind::op: return s[0];
    case NormSpec::Kind::ky_fan: {
      const std::size_t k = std::min(s.size(), static_cast<std::size_t>(spec.k));
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) sum += s[i];
      return sum;
    }
    case NormSpec::Kind::schatten: {
      if (spec.p == 1.0) {
        double sum = 0.0;
        for (double x : s) sum += x;
        return sum;
      }
      // scale by the largest entry to keep x^p in range
      const double top = s[0];
      if (top == 0.0) return 0.0;
      double sum = 0.0;
      for (double x : s) sum += std::pow(x / top, spec.p);
      return top * std::pow(sum, 1.0 / spec.p);
    }
  }
  return 0.0;
}

double gauge_norm(const ComplexMatrix& x, const NormSpec& spec) {
  const SpectrumVector s = singular_values(x);
  return gauge(s.values(), spec);
}

double gauge_norm(const PsdMatrix& a, const NormSpec& spec) {
  const SpectrumVector s = eigenvalues_desc(a);
  return gauge(s.values(), spec);
}

double derived_anti_norm(const PsdMatrix& a, const AntiNormSpec& spec) {
  if (!a.invertible()) {
    if (!(spec.p > 0.0)) throw DomainError("anti-norm: exponent must be > 0");
    return 0.0;
  }
  return derived_anti_norm(eigenvalues_desc(a), spec);
}

double derived_anti_norm(const SpectrumVector& lam, const AntiNormSpec& spec) {
  return derived_anti_norm_of_power(lam, 1.0, spec);
}

double derived_anti_norm_of_power(const SpectrumVector& lam, double t,
                                  const AntiNormSpec& spec) {
  if (!(spec.p > 0.0)) throw DomainError("anti-norm: exponent must be > 0");
  if (!(t > 0.0)) throw DomainError("anti-norm: power must be > 0");
  if (lam.empty()) return 0.0;
  const double lmin = lam.min();
  if (!(lmin > tolerance::zero_threshold * lam.max())) return 0.0;
  // Work with (lambda_i / lambda_n)^{-tp} <= 1 to avoid overflow.
  std::vector<double> inv(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i)
    inv[lam.size() - 1 - i] = std::pow(lam[i] / lmin, -t * spec.p);
  const double g = gauge(inv, spec.base);
  return std::pow(lmin, t) * std::pow(g, -1.0 / spec.p);
}

}  // namespace majorlab
