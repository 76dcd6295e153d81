#include "majorlab/theorem_suite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace majorlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// premise levels may exceed 1 by rounding only
constexpr double kPremiseSlack = 1e-10;
constexpr double kEquivalenceTol = 1e-9;
constexpr double kRouteTol = 1e-8;

const std::vector<double> kAlphas = {0.25, 0.5, 0.75};
const std::vector<double> kExponents = {0.0, 0.5, 1.0, 2.0};
const std::vector<std::string> kFunctionIds = {"1",     "x",      "x^0.5",
                                               "x^2",   "x^0.25", "x^1.5"};

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double relative_margin(double bound, double value) {
  const double s = std::max(std::abs(bound), std::abs(value));
  if (s == 0.0) return 0.0;
  return (bound - value) / s;
}

PsdMatrix spectral(const PsdMatrix& a, const ScalarFn& g) {
  return PsdMatrix(apply_scalar_function(a, g));
}

// entries at or below zeta * max become exact zeros
SpectrumVector clean(const SpectrumVector& s) {
  const double z = tolerance::zero_threshold * s.max();
  std::vector<double> v = s.values();
  for (double& x : v)
    if (x <= z) x = 0.0;
  return SpectrumVector(std::move(v));
}

SpectrumVector squared(const SpectrumVector& s) { return s.pow(2.0); }

// Keeps the smallest margin and a label for where it came from.
struct Worst {
  double margin = kInf;
  std::string what;
  void take(double m, const std::string& label) {
    // NaN ranks below everything
    const bool replace = what.empty() ||
                         (std::isnan(m) && !std::isnan(margin)) ||
                         (!std::isnan(margin) && m < margin);
    if (replace) {
      margin = m;
      what = label;
    }
  }
  void take(const MajorizationReport& r, const std::string& label) {
    std::string where = label + " " + to_string(r.order);
    for (const auto& row : r.per_k)
      if (row.margin == r.worst_margin) {
        where += " k=" + std::to_string(row.k);
        break;
      }
    take(r.worst_margin, where);
    if (r.order == Order::log) take(-r.equality_gap, label + " determinant gap");
  }
};

double worst_of(const MajorizationReport& r) {
  return r.order == Order::log ? std::min(r.worst_margin, -r.equality_gap)
                               : r.worst_margin;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return rng.pick(std::span<const T>(v));
}

std::pair<double, double> distinct_pair(Rng& rng, const std::vector<double>& v) {
  const int i = rng.uniform_int(0, static_cast<int>(v.size()) - 1);
  int k = rng.uniform_int(0, static_cast<int>(v.size()) - 2);
  if (k >= i) ++k;
  return {v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(k)]};
}

ComplexMatrix draw_psd(Index n, Rng& rng, double singular_fraction) {
  PsdDraw d;
  d.lo = 0.05;
  d.hi = 2.0;
  if (rng.bernoulli(singular_fraction))
    d.zeros = rng.uniform_int(1, static_cast<int>(std::max<Index>(1, n - 1)));
  return random_psd(n, rng, d).matrix();
}

ComplexMatrix draw_pd(Index n, Rng& rng, double lo = 0.05) {
  PsdDraw d;
  d.lo = lo;
  d.hi = 2.0;
  return random_psd(n, rng, d).matrix();
}

KrausMap draw_map(Index in, Index out, Rng& rng) {
  return random_map(in, out, rng.uniform_int(1, 3), MapMode::plain, rng);
}

std::vector<std::string> kernel_pool(const SuiteConfig& cfg) {
  if (!cfg.kernels.empty()) return cfg.kernels;
  std::vector<std::string> ids;
  for (const MeanKernel& k : catalog()) ids.push_back(k.id());
  return ids;
}

template <typename Pred>
std::vector<std::string> kernels_where(const SuiteConfig& cfg, Pred pred,
                                       const std::string& fallback) {
  std::vector<std::string> out;
  for (const std::string& id : kernel_pool(cfg))
    if (pred(kernel_by_id(id))) out.push_back(id);
  if (out.empty()) out.push_back(fallback);
  return out;
}

MapInstance as_map_instance(const TrialInstance& t) {
  if (!t.a || !t.b || !t.phi || !t.psi)
    throw DomainError(t.suite + ": instance lacks matrices or maps");
  return {PsdMatrix(*t.a), PsdMatrix(*t.b), *t.phi, *t.psi};
}

std::optional<MapInstance> certified_instance(const TrialInstance& t) {
  if (!t.phi_c || !t.psi_c) return std::nullopt;
  return MapInstance{PsdMatrix(*t.a), PsdMatrix(*t.b), *t.phi_c, *t.psi_c};
}

// A, B and the pair of maps; 20% of trials use identity maps on M_l.
void draw_pair(TrialInstance& t, const SuiteConfig& cfg, Rng& rng,
               bool allow_identity) {
  if (allow_identity && rng.bernoulli(0.2)) {
    t.variant = "identity";
    t.a = draw_psd(cfg.l, rng, cfg.singular_fraction);
    t.b = draw_psd(cfg.l, rng, cfg.singular_fraction);
    t.phi = KrausMap::identity(cfg.l);
    t.psi = KrausMap::identity(cfg.l);
    return;
  }
  t.variant = "maps";
  t.a = draw_psd(cfg.n, rng, cfg.singular_fraction);
  t.b = draw_psd(cfg.m, rng, cfg.singular_fraction);
  t.phi = draw_map(cfg.n, cfg.l, rng);
  t.psi = draw_map(cfg.m, cfg.l, rng);
}

void identity_pair(TrialInstance& t, Index d, const ComplexMatrix& a,
                   const ComplexMatrix& b) {
  t.variant = "identity";
  t.a = a;
  t.b = b;
  t.phi = KrausMap::identity(d);
  t.psi = KrausMap::identity(d);
}

void set_contraction_target(TrialInstance& t, double target) {
  const MapPair pair = certify_contraction_pair(*t.phi, *t.psi);
  t.psi = pair.psi;
  t.params["rescale"] = pair.rescale;
  MapInstance in = as_map_instance(t);
  t.a = enforce_premise(in, target).matrix();
}

std::vector<NormSpec> holder_norms(Index l) {
  std::vector<NormSpec> norms;
  for (int k = 1; k <= l; ++k) norms.push_back(NormSpec::ky_fan(k));
  for (double p : {1.0, 2.0, 3.0}) norms.push_back(NormSpec::schatten(p));
  norms.push_back(NormSpec::operator_norm());
  return norms;
}

TrialInstance base(const std::string& suite, const SuiteConfig& cfg,
                   std::uint64_t index) {
  TrialInstance t;
  t.suite = suite;
  t.seed = cfg.seed;
  t.trial = index;
  return t;
}

TrialOutcome from_worst(const Worst& w) {
  TrialOutcome out;
  out.margin = w.margin;
  out.detail = w.what + " margin " + fmt(w.margin);
  return out;
}

void side(TrialOutcome& out, double residual, double limit,
          const std::string& what) {
  if (residual > out.side_residual || std::isnan(residual)) {
    out.side_residual = residual;
    out.side_detail = what + " residual " + fmt(residual);
  }
  if (!(residual <= limit)) out.side_ok = false;
}

}  // namespace

// ---- config ----------------------------------------------------------------

void validate(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  for (Index d : {cfg.n, cfg.m, cfg.l})
    if (d < 1 || d > 6) throw DomainError("dimensions must lie in [1, 6]");
  if (!(cfg.tol > 0.0)) throw DomainError("tol must be > 0");
  if (!(cfg.singular_fraction >= 0.0 && cfg.singular_fraction <= 1.0))
    throw DomainError("singular_fraction must lie in [0, 1]");
  if (cfg.jobs < 1) throw DomainError("jobs must be >= 1");
  for (const std::string& id : cfg.kernels) kernel_by_id(id);
}

double TrialInstance::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end())
    throw DomainError(suite + ": missing parameter '" + key + "'");
  return it->second;
}

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::borderline: return "borderline";
    case TrialStatus::fail: return "fail";
    case TrialStatus::inconclusive: return "inconclusive";
    case TrialStatus::informational: return "informational";
  }
  return "?";
}

TrialStatus classify(const TrialInstance& inst, const TrialOutcome& out,
                     double tol) {
  if (!out.asserted) return TrialStatus::informational;
  if (!out.side_ok) return TrialStatus::fail;
  if (inst.witness)
    return std::abs(out.margin) <= tol ? TrialStatus::pass : TrialStatus::fail;
  const Verdict v = classify_margin(out.margin, tol);
  if (v == Verdict::fails)
    return out.used_ladder || !out.converged ? TrialStatus::inconclusive
                                             : TrialStatus::fail;
  if (!out.converged) return TrialStatus::inconclusive;
  return v == Verdict::borderline ? TrialStatus::borderline : TrialStatus::pass;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "prop-2.1", "prop-2.2",   "cor-2.3",  "thm-3.1", "cor-3.3",
      "cor-3.4",  "cor-3.5",    "prop-4.1", "cond-i-iii", "prop-4.2",
      "cor-4.3",  "eq-4.7",     "prop-4.6", "lemma-4.7"};
  return ids;
}

bool is_suite_id(const std::string& id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// ---- individual checks -----------------------------------------------------

ScalarFunction scalar_function_by_id(const std::string& id) {
  if (id == "1") return ScalarFunction::constant(1.0);
  if (id == "x") return ScalarFunction::power(1.0);
  if (id.rfind("x^", 0) == 0) {
    const std::string tail = id.substr(2);
    double p = 0.0;
    auto res = std::from_chars(tail.data(), tail.data() + tail.size(), p);
    if (res.ec == std::errc{} && res.ptr == tail.data() + tail.size() &&
        p >= 0.0)
      return ScalarFunction::power(p);
  }
  throw DomainError("unknown scalar function '" + id + "'");
}

SpectrumVector pair_spectrum(const MapInstance& in, double p) {
  return clean(sandwich_spectrum(in.phi.apply(fractional_power(in.a, p)),
                                 in.psi.apply(fractional_power(in.b, p))));
}

namespace {
double gamma_of(const MapInstance& in, const ScalarFunction& ga,
                const ScalarFunction& gb) {
  return sandwich_spectrum(in.phi.apply(spectral(in.a, ga.eval)),
                           in.psi.apply(spectral(in.b, gb.eval)))
      .max();
}
}  // namespace

double check_bridge_mean(const MapInstance& in, const ScalarFunction& phi0,
                         const ScalarFunction& phi1, const MeanKernel& f) {
  const ScalarFunction phi = function_bridge(phi0, phi1, f);
  const ScalarFunction phit = function_bridge(phi0, phi1, adjoint(f));
  const double g0 = gamma_of(in, phi0, phi0);
  const double g1 = gamma_of(in, phi1, phi1);
  return relative_margin(std::max(g0, g1), gamma_of(in, phit, phi));
}

double check_geometric_bridge(const MapInstance& in, const ScalarFunction& phi0,
                              const ScalarFunction& phi1, double alpha) {
  const ScalarFunction phi = geometric_bridge(phi0, phi1, alpha);
  const double g0 = gamma_of(in, phi0, phi0);
  const double g1 = gamma_of(in, phi1, phi1);
  return relative_margin(scalar_geometric(g0, g1, alpha),
                         gamma_of(in, phi, phi));
}

PremiseCheck check_contraction_premise(const MapInstance& in,
                                       const MeanKernel& f) {
  const MeanKernel fa = adjoint(f);
  PremiseCheck c;
  c.pair_level =
      sandwich_spectrum(in.phi.apply_identity(), in.psi.apply_identity()).max();
  c.premise_level = sandwich_spectrum(in.phi.apply(in.a), in.psi.apply(in.b)).max();
  const double lhs =
      sandwich_spectrum(in.phi.apply(spectral(in.a, [&](double x) { return fa(x); })),
                        in.psi.apply(spectral(in.b, [&](double x) { return f(x); })))
          .max();
  c.margin = 1.0 - lhs;
  return c;
}

PsdMatrix enforce_premise(const MapInstance& in, double target) {
  const double level =
      sandwich_spectrum(in.phi.apply(in.a), in.psi.apply(in.b)).max();
  if (!(level > 0.0)) return in.a;
  return PsdMatrix(HermitianMatrix(in.a.matrix() * (target / level)));
}

InterpolationCheck check_interpolation(const MapInstance& in, double p0,
                                       double p1, double alpha,
                                       bool identity_maps) {
  const double pa = (1.0 - alpha) * p0 + alpha * p1;
  InterpolationCheck c;
  SpectrumVector lam[3];
  const double ps[3] = {pa, p0, p1};
  for (int i = 0; i < 3; ++i) {
    const PsdMatrix x = in.phi.apply(fractional_power(in.a, ps[i]));
    const PsdMatrix y = in.psi.apply(fractional_power(in.b, ps[i]));
    lam[i] = clean(sandwich_spectrum(x, y));
    // the same spectrum from the unsymmetrized product
    const SpectrumVector direct = eigenvalues_desc(sandwich(x, y));
    const SpectrumVector sv = squared(singular_values(
        fractional_power(x, 0.5).matrix() * fractional_power(y, 0.5).matrix()));
    const double top = std::max(direct.max(), sv.max());
    for (std::size_t k = 0; k < direct.size(); ++k) {
      const double r = top > 0.0 ? std::abs(direct[k] - sv[k]) / top : 0.0;
      c.equivalence_residual = std::max(c.equivalence_residual, r);
    }
  }
  c.report = weak_log_majorize(lam[0], power_blend(lam[1], lam[2], alpha));
  if (identity_maps) {
    auto s = [&](double p) { return product_singular_values(in.a, p, in.b, p); };
    c.identity_report = log_majorize(s(pa), power_blend(s(p0), s(p1), alpha));
  }
  return c;
}

double PowerFormCheck::worst() const {
  return std::min({worst_of(blend), worst_of(r_form), worst_of(certified),
                   worst_of(certified_r)});
}

PowerFormCheck check_power_forms(const MapInstance& in,
                                 const MapInstance& certified, double alpha,
                                 double r) {
  const SpectrumVector level = clean(
      sandwich_spectrum(in.phi.apply_identity(), in.psi.apply_identity()));
  const SpectrumVector la = pair_spectrum(in, alpha);
  const SpectrumVector l1 = pair_spectrum(in, 1.0);
  const SpectrumVector lr = pair_spectrum(in, r);
  PowerFormCheck c;
  c.blend = weak_log_majorize(la, power_blend(level, l1, alpha));
  // lambda^r(M_1) against level^{r-1} lambda(M_r), compared through r-th
  // roots of the partial products to keep the dynamic range small
  c.r_form = weak_log_majorize(l1, power_blend(level, lr, 1.0 / r));
  const SpectrumVector ca = pair_spectrum(certified, alpha);
  const SpectrumVector c1 = pair_spectrum(certified, 1.0);
  const SpectrumVector cr = pair_spectrum(certified, r);
  c.certified = weak_log_majorize(ca, c1.pow(alpha));
  c.certified_r = weak_log_majorize(c1, cr.pow(1.0 / r));
  return c;
}

double check_holder_norms(const MapInstance& in, double p0, double p1,
                          double alpha, const std::vector<NormSpec>& norms) {
  const double pa = (1.0 - alpha) * p0 + alpha * p1;
  auto sv = [&](double p) {
    return product_singular_values(in.phi.apply(fractional_power(in.a, p)), 0.5,
                                   in.psi.apply(fractional_power(in.b, p)), 0.5);
  };
  const SpectrumVector sa = sv(pa), s0 = sv(p0), s1 = sv(p1);
  double margin = kInf;
  for (const NormSpec& spec : norms)
    for (double r : {0.5, 1.0, 2.0}) {
      const double va = gauge(sa.pow(r).values(), spec);
      const double v0 = gauge(s0.pow(r).values(), spec);
      const double v1 = gauge(s1.pow(r).values(), spec);
      margin = std::min(margin,
                        relative_margin(scalar_geometric(v0, v1, alpha), va));
    }
  return margin;
}

const std::vector<double>& norm_limit_grid() {
  static const std::vector<double> grid = {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8,
                                           0.25,     0.5,      1.0,      2.0,
                                           4.0};
  return grid;
}

LimitCheck check_norm_limit(const MapInstance& in, const NormSpec& norm,
                            bool limit_branch) {
  LimitCheck c;
  c.grid = norm_limit_grid();
  for (double p : c.grid)
    c.values.push_back(gauge(pair_spectrum(in, p).pow(1.0 / p).values(), norm));
  c.monotone_margin = kInf;
  for (std::size_t k = 0; k + 1 < c.values.size(); ++k)
    c.monotone_margin =
        std::min(c.monotone_margin, relative_margin(c.values[k + 1], c.values[k]));
  if (!limit_branch) return c;
  c.has_limit = true;
  const HermitianMatrix la = in.phi.apply(log_psd(in.a));
  const HermitianMatrix lb = in.psi.apply(log_psd(in.b));
  c.limit = gauge_norm(exp_hermitian(HermitianMatrix(la.matrix() + lb.matrix())),
                       norm);
  c.limit_margin = kInf;
  for (double v : c.values)
    c.limit_margin = std::min(c.limit_margin, relative_margin(v, c.limit));
  for (std::size_t k = 0; k < 3; ++k)
    c.rate_constant = std::max(c.rate_constant,
                               (c.values[k] - c.limit) / (c.grid[k] * c.limit));
  return c;
}

namespace {
MeanEigenCheck mean_eigen(const PsdMatrix& a1, const PsdMatrix& b1,
                          const PsdMatrix& ar, const PsdMatrix& br,
                          const MeanKernel& f, double r, double c) {
  const MeanResult m1 = mean(a1, b1, f);
  const MeanResult mr = mean(ar, br, f);
  const double factor = std::pow(c, r - 1.0);
  const double lhs = factor * mr.value.lambda_min();
  const double rhs = std::pow(m1.value.lambda_min(), r);
  const double scale =
      std::max(factor * mr.value.lambda_max(), std::pow(m1.value.lambda_max(), r));
  MeanEigenCheck out;
  out.margin = scale > 0.0 ? (lhs - rhs) / scale : 0.0;
  out.used_ladder = m1.route == MeanRoute::epsilon_ladder ||
                    mr.route == MeanRoute::epsilon_ladder;
  out.converged = m1.converged && mr.converged;
  return out;
}
}  // namespace

MeanEigenCheck check_mean_lambda_min(const MapInstance& in, const MeanKernel& f,
                                     double r) {
  const double c = std::max(in.phi.apply_identity().lambda_max(),
                            in.psi.apply_identity().lambda_max());
  return mean_eigen(in.phi.apply(in.a), in.psi.apply(in.b),
                    in.phi.apply(fractional_power(in.a, r)),
                    in.psi.apply(fractional_power(in.b, r)), f, r, c);
}

MeanEigenCheck check_condition_iii(const PsdMatrix& a, const PsdMatrix& b,
                                   const MeanKernel& f, double r) {
  return mean_eigen(a, b, fractional_power(a, r), fractional_power(b, r), f, r,
                    1.0);
}

double SuperCheck::worst() const {
  double w = worst_of(scaled);
  if (certified) w = std::min(w, worst_of(*certified));
  if (identity) w = std::min(w, worst_of(*identity));
  return w;
}

SuperCheck check_geometric_super(const MapInstance& in,
                                 const std::optional<MapInstance>& certified,
                                 double alpha, double r, bool identity_maps) {
  SuperCheck c;
  auto gm = [&](const MapInstance& x, double p) {
    MeanResult m = weighted_geometric(x.phi.apply(fractional_power(x.a, p)),
                                      x.psi.apply(fractional_power(x.b, p)), alpha);
    c.used_ladder = c.used_ladder || m.route == MeanRoute::epsilon_ladder;
    c.converged = c.converged && m.converged;
    return eigenvalues_desc(m.value);
  };
  const double level = scalar_geometric(in.phi.apply_identity().lambda_max(),
                                        in.psi.apply_identity().lambda_max(), alpha);
  const SpectrumVector mr = gm(in, r), m1 = gm(in, 1.0);
  c.scaled = log_supermajorize(mr.scaled(std::pow(level, r - 1.0)), m1.pow(r));
  if (certified)
    c.certified = log_supermajorize(gm(*certified, r), gm(*certified, 1.0).pow(r));
  if (identity_maps) c.identity = log_majorize(mr, m1.pow(r));
  return c;
}

double check_anti_norm_monotone(const MapInstance& in, double alpha,
                                const AntiNormSpec& anti) {
  // the range of Phi(A^p) does not depend on p > 0, so decide once
  const bool left = in.phi.apply(in.a).invertible();
  const bool right = in.psi.apply(in.b).invertible();
  const bool invertible = alpha == 0.0   ? left
                          : alpha == 1.0 ? right
                                         : left && right;
  if (!invertible) return 0.0;
  const std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> g;
  for (double p : grid) {
    const MeanResult m =
        weighted_geometric(in.phi.apply(fractional_power(in.a, p)),
                           in.psi.apply(fractional_power(in.b, p)), alpha);
    g.push_back(derived_anti_norm_of_power(eigenvalues_desc(m.value), 1.0 / p, anti));
  }
  double margin = kInf;
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    margin = std::min(margin, relative_margin(g[k + 1], g[k]));
  return margin;
}

SpectrumVector compressed_power_spectrum(const PsdMatrix& a, const Projection& e,
                                         double alpha, double p) {
  const auto l = static_cast<std::size_t>(e.rank());
  const SpectrumVector mu =
      squared(product_singular_values(a, -p / 2.0, e.psd(), 1.0)).truncated(l);
  std::vector<double> nu(l);
  for (std::size_t i = 0; i < l; ++i)
    nu[i] = alpha == 1.0 ? 1.0 : std::pow(mu[l - 1 - i], alpha - 1.0);
  return SpectrumVector::from_unsorted(std::move(nu));
}

RangeCheck check_range_interpolation(const PsdMatrix& a, const Projection& e,
                                     double alpha, double p0, double p1,
                                     double theta) {
  if (!a.invertible()) throw RankError("range interpolation: A must be invertible");
  const double pt = (1.0 - theta) * p0 + theta * p1;
  const auto l = static_cast<std::size_t>(e.rank());
  RangeCheck c;
  for (double p : {pt, p0, p1}) {
    const SpectrumVector r2 = compressed_power_spectrum(a, e, alpha, p);
    const SpectrumVector r1 =
        eigenvalues_desc(weighted_geometric(fractional_power(a, p), e.psd(), alpha).value)
            .truncated(l);
    const double scale = std::max(1.0, r2.max());
    for (std::size_t i = 0; i < l; ++i)
      c.route_residual = std::max(c.route_residual, std::abs(r1[i] - r2[i]) / scale);
  }
  c.report = log_supermajorize(
      compressed_power_spectrum(a, e, alpha, pt),
      power_blend(compressed_power_spectrum(a, e, alpha, p0),
                  compressed_power_spectrum(a, e, alpha, p1), theta));
  return c;
}

double check_range_mean(const PsdMatrix& a, const Projection& e,
                        const MeanKernel& f) {
  if (!a.invertible()) throw RankError("range mean: A must be invertible");
  const PsdMatrix route1 = mean(a, e.psd(), f).value;
  const MeanKernel fd = dual(f);
  const ComplexMatrix& em = e.matrix();
  const PsdMatrix inner(HermitianMatrix(
      em * spectral(a, [](double x) { return 1.0 / x; }).matrix() * em));
  const PsdMatrix outer(HermitianMatrix(
      em * spectral(inner, [&](double x) { return fd(x); }).matrix() * em));
  const PsdMatrix route2 = pseudo_inverse_on_range(outer, e);
  return (route1.matrix() - route2.matrix()).norm();
}

MajorizationReport check_compression_interpolation(const PsdMatrix& a,
                                                   const Projection& e,
                                                   double p0, double p1,
                                                   double theta) {
  const double pt = (1.0 - theta) * p0 + theta * p1;
  const auto l = static_cast<std::size_t>(e.rank());
  auto lam = [&](double p) {
    return clean(squared(product_singular_values(a, p / 2.0, e.psd(), 1.0))
                     .truncated(l));
  };
  return weak_log_majorize(lam(pt), power_blend(lam(p0), lam(p1), theta));
}

// ---- generation ------------------------------------------------------------

TrialInstance generate_trial(const std::string& suite, const SuiteConfig& cfg,
                             std::uint64_t index) {
  if (!is_suite_id(suite)) throw DomainError("unknown suite '" + suite + "'");
  Rng rng(derive_seed(cfg.seed, hash_name(suite), index));
  TrialInstance t = base(suite, cfg, index);
  const std::vector<double> ratios = {1.5, 2.0, 3.0};

  if (suite == "prop-2.1" || suite == "prop-2.2") {
    draw_pair(t, cfg, rng, true);
    const int i = rng.uniform_int(0, static_cast<int>(kFunctionIds.size()) - 1);
    int k = rng.uniform_int(0, static_cast<int>(kFunctionIds.size()) - 2);
    if (k >= i) ++k;
    t.functions = {kFunctionIds[static_cast<std::size_t>(i)],
                   kFunctionIds[static_cast<std::size_t>(k)]};
    if (suite == "prop-2.1")
      t.kernel = pick(rng, kernel_pool(cfg));
    else
      t.params["alpha"] = pick(rng, kAlphas);
  } else if (suite == "cor-2.3") {
    draw_pair(t, cfg, rng, true);
    t.kernel = pick(rng, kernel_pool(cfg));
    set_contraction_target(t, 1.0 / (1.0 + kCertifyMargin));
  } else if (suite == "thm-3.1" || suite == "cor-3.4") {
    draw_pair(t, cfg, rng, true);
    const auto [p0, p1] = distinct_pair(rng, kExponents);
    t.params["p0"] = p0;
    t.params["p1"] = p1;
    t.params["alpha"] = pick(rng, kAlphas);
  } else if (suite == "cor-3.3") {
    draw_pair(t, cfg, rng, true);
    t.params["alpha"] = pick(rng, kAlphas);
    t.params["r"] = pick(rng, std::vector<double>{1.0, 1.5, 2.0, 4.0});
    const MapPair pair = certify_contraction_pair(*t.phi, *t.psi);
    t.phi_c = pair.phi;
    t.psi_c = pair.psi;
  } else if (suite == "cor-3.5") {
    t.norm = pick(rng, std::vector<std::string>{"operator", "trace"});
    if (rng.bernoulli(0.5)) {
      t.variant = "limit";
      const Index n = std::max(cfg.n, cfg.l), m = std::max(cfg.m, cfg.l);
      t.a = random_pd(n, rng, 1e3).matrix();
      t.b = random_pd(m, rng, 1e3).matrix();
      t.phi = random_map(n, cfg.l, rng.uniform_int(1, 3), MapMode::unital, rng);
      t.psi = random_map(m, cfg.l, rng.uniform_int(1, 3), MapMode::unital, rng);
    } else {
      draw_pair(t, cfg, rng, true);
      const MapPair pair = certify_contraction_pair(*t.phi, *t.psi);
      t.psi = pair.psi;
      t.params["rescale"] = pair.rescale;
    }
  } else if (suite == "prop-4.1") {
    draw_pair(t, cfg, rng, true);
    t.kernel = pick(rng, kernels_where(
                             cfg, [](const MeanKernel& k) { return k.satisfies_condition_i(); },
                             "power:0.5"));
    t.params["r"] = pick(rng, ratios);
  } else if (suite == "cond-i-iii") {
    t.variant = "identity";
    t.a = draw_psd(cfg.n, rng, cfg.singular_fraction);
    t.b = draw_psd(cfg.n, rng, cfg.singular_fraction);
    t.kernel = pick(rng, kernel_pool(cfg));
    t.params["r"] = pick(rng, ratios);
  } else if (suite == "prop-4.2") {
    draw_pair(t, cfg, rng, true);
    const double alpha = pick(rng, kAlphas);
    t.params["alpha"] = alpha;
    t.params["r"] = pick(rng, ratios);
    const MapPair pair = certify_geometric_pair(*t.phi, *t.psi, alpha);
    t.phi_c = pair.phi;
    t.psi_c = pair.psi;
  } else if (suite == "cor-4.3") {
    const bool identity = rng.bernoulli(0.2);
    const Index n = identity ? cfg.l : cfg.n, m = identity ? cfg.l : cfg.m;
    t.variant = identity ? "identity" : "maps";
    t.a = draw_pd(n, rng, 0.1);
    t.b = draw_pd(m, rng, 0.1);
    t.phi = identity ? KrausMap::identity(n) : draw_map(n, cfg.l, rng);
    t.psi = identity ? KrausMap::identity(m) : draw_map(m, cfg.l, rng);
    const double alpha = pick(rng, kAlphas);
    t.params["alpha"] = alpha;
    t.norm = pick(rng, std::vector<std::string>{"operator", "trace", "schatten:2"});
    t.params["anti_p"] = pick(rng, std::vector<double>{0.5, 1.0, 2.0});
    const MapPair pair = certify_geometric_pair(*t.phi, *t.psi, alpha);
    t.phi = pair.phi;
    t.psi = pair.psi;
    t.params["rescale"] = pair.rescale;
  } else if (suite == "eq-4.7") {
    t.variant = "compression";
    t.a = draw_psd(cfg.n, rng, cfg.singular_fraction);
    t.e = random_projection(cfg.n, rng.uniform_int(1, static_cast<int>(cfg.n)), rng)
              .matrix();
    const auto [p0, p1] = distinct_pair(rng, kExponents);
    t.params["p0"] = p0;
    t.params["p1"] = p1;
    t.params["theta"] = pick(rng, kAlphas);
  } else if (suite == "prop-4.6") {
    t.variant = "range";
    ComplexMatrix a = draw_psd(cfg.n, rng, cfg.singular_fraction);
    if (!PsdMatrix(a).invertible())
      a += 1e-6 * ComplexMatrix::Identity(cfg.n, cfg.n);
    t.a = a;
    t.e = random_projection(cfg.n, rng.uniform_int(1, static_cast<int>(cfg.n)), rng)
              .matrix();
    t.params["alpha"] = pick(rng, std::vector<double>{0.25, 0.5, 0.75, 1.0});
    const auto [p0, p1] = distinct_pair(rng, std::vector<double>{0.0, 0.5, 1.0});
    t.params["p0"] = p0;
    t.params["p1"] = p1;
    t.params["theta"] = pick(rng, kAlphas);
  } else if (suite == "lemma-4.7") {
    t.variant = "range";
    t.a = draw_pd(cfg.n, rng);
    t.e = random_projection(cfg.n, rng.uniform_int(1, static_cast<int>(cfg.n)), rng)
              .matrix();
    t.kernel = pick(rng, kernels_where(
                             cfg, [](const MeanKernel& k) { return k.limits().at_zero == 0.0; },
                             "power:0.5"));
  }
  return t;
}

std::vector<TrialInstance> witness_instances(const std::string& suite,
                                             const SuiteConfig& cfg) {
  if (!is_suite_id(suite)) throw DomainError("unknown suite '" + suite + "'");
  // witnesses live far from the random trial indices
  constexpr std::uint64_t kWitnessBase = std::uint64_t{1} << 40;
  std::vector<TrialInstance> out;
  auto make = [&](const std::string& variant) {
    TrialInstance t = base(suite, cfg, kWitnessBase + out.size());
    t.witness = true;
    t.variant = variant;
    return t;
  };
  Rng rng(derive_seed(cfg.seed, hash_name(suite), kWitnessBase));
  const Index l = cfg.l;
  const ComplexMatrix id = ComplexMatrix::Identity(l, l);
  auto random_maps = [&](TrialInstance& t) {
    t.a = draw_pd(cfg.n, rng);
    t.b = draw_pd(cfg.m, rng);
    t.phi = draw_map(cfg.n, l, rng);
    t.psi = draw_map(cfg.m, l, rng);
  };

  if (suite == "prop-2.1") {
    TrialInstance t = make("maps");
    random_maps(t);
    t.functions = {"x^0.5", "x^0.5"};
    t.kernel = "arithmetic";
    out.push_back(t);
    TrialInstance u = make("identity");
    identity_pair(u, l, id, id);
    u.functions = {"1", "x"};
    u.kernel = "power:0.5";
    out.push_back(u);
  } else if (suite == "prop-2.2") {
    for (double alpha : {0.0, 1.0}) {
      TrialInstance t = make("maps");
      random_maps(t);
      t.functions = {"1", "x"};
      t.params["alpha"] = alpha;
      out.push_back(t);
    }
  } else if (suite == "cor-2.3") {
    for (const char* k : {"power:1", "power:0", "arithmetic"}) {
      TrialInstance t = make("identity");
      identity_pair(t, l, id, id);
      t.kernel = k;
      out.push_back(t);
    }
  } else if (suite == "thm-3.1" || suite == "cor-3.4") {
    for (double alpha : {0.0, 1.0}) {
      TrialInstance t = make("maps");
      random_maps(t);
      t.params["p0"] = 0.5;
      t.params["p1"] = 2.0;
      t.params["alpha"] = alpha;
      out.push_back(t);
    }
    TrialInstance u = make("identity");
    identity_pair(u, l, draw_pd(l, rng), draw_pd(l, rng));
    u.params["p0"] = 1.0;
    u.params["p1"] = 1.0;
    u.params["alpha"] = 0.5;
    out.push_back(u);
  } else if (suite == "cor-3.3") {
    TrialInstance t = make("maps");
    random_maps(t);
    t.params["alpha"] = 1.0;
    t.params["r"] = 1.0;
    const MapPair pair = certify_contraction_pair(*t.phi, *t.psi);
    t.phi_c = pair.phi;
    t.psi_c = pair.psi;
    out.push_back(t);
  } else if (suite == "cor-3.5") {
    TrialInstance t = make("limit");
    identity_pair(t, l, id, id);
    t.variant = "limit";
    t.norm = "operator";
    out.push_back(t);
    // commuting diagonal pair: F(p) is constant
    TrialInstance u = make("limit");
    ComplexMatrix da = ComplexMatrix::Zero(l, l), db = ComplexMatrix::Zero(l, l);
    for (Index i = 0; i < l; ++i) {
      da(i, i) = rng.log_uniform(0.1, 2.0);
      db(i, i) = rng.log_uniform(0.1, 2.0);
    }
    identity_pair(u, l, da, db);
    u.variant = "limit";
    u.norm = "trace";
    out.push_back(u);
  } else if (suite == "prop-4.1") {
    TrialInstance t = make("maps");
    random_maps(t);
    t.kernel = "harmonic";
    t.params["r"] = 1.0;
    out.push_back(t);
  } else if (suite == "cond-i-iii") {
    TrialInstance t = make("identity");
    t.a = draw_pd(cfg.n, rng);
    t.b = draw_pd(cfg.n, rng);
    t.kernel = "power:1";
    t.params["r"] = 2.0;
    out.push_back(t);
  } else if (suite == "prop-4.2") {
    TrialInstance t = make("maps");
    random_maps(t);
    t.params["alpha"] = 0.5;
    t.params["r"] = 1.0;
    const MapPair pair = certify_geometric_pair(*t.phi, *t.psi, 0.5);
    t.phi_c = pair.phi;
    t.psi_c = pair.psi;
    out.push_back(t);
    TrialInstance u = make("identity");
    identity_pair(u, l, draw_pd(l, rng), draw_pd(l, rng));
    u.params["alpha"] = 0.5;
    u.params["r"] = 1.0;
    out.push_back(u);
  } else if (suite == "cor-4.3") {
    TrialInstance t = make("maps");
    const Index n = std::max(cfg.n, l), m = std::max(cfg.m, l);
    t.a = ComplexMatrix::Identity(n, n);
    t.b = ComplexMatrix::Identity(m, m);
    t.phi = random_map(n, l, 2, MapMode::unital, rng);
    t.psi = random_map(m, l, 2, MapMode::unital, rng);
    t.params["alpha"] = 0.5;
    t.norm = "trace";
    t.params["anti_p"] = 1.0;
    out.push_back(t);
  } else if (suite == "eq-4.7") {
    for (double theta : {0.0, 1.0}) {
      TrialInstance t = make("compression");
      t.a = draw_pd(cfg.n, rng);
      t.e = random_projection(cfg.n, std::max<Index>(1, cfg.n / 2), rng).matrix();
      t.params["p0"] = 0.5;
      t.params["p1"] = 2.0;
      t.params["theta"] = theta;
      out.push_back(t);
    }
  } else if (suite == "prop-4.6") {
    for (double alpha : {1.0, 0.5}) {
      TrialInstance t = make("range");
      t.a = draw_pd(cfg.n, rng);
      t.e = random_projection(cfg.n, std::max<Index>(1, cfg.n / 2), rng).matrix();
      t.params["alpha"] = alpha;
      t.params["p0"] = 0.5;
      t.params["p1"] = 1.0;
      t.params["theta"] = alpha == 1.0 ? 0.5 : 0.0;
      out.push_back(t);
    }
  } else if (suite == "lemma-4.7") {
    TrialInstance t = make("range");
    t.a = draw_pd(cfg.n, rng);
    t.e = ComplexMatrix::Identity(cfg.n, cfg.n);
    t.kernel = "power:0.5";
    out.push_back(t);
  }
  return out;
}

// ---- evaluation ------------------------------------------------------------

TrialOutcome evaluate(const TrialInstance& t) {
  const std::string& s = t.suite;
  const bool identity = t.variant == "identity";

  if (s == "prop-2.1" || s == "prop-2.2") {
    if (t.functions.size() != 2)
      throw DomainError(s + ": expected two scalar functions");
    const MapInstance in = as_map_instance(t);
    const ScalarFunction f0 = scalar_function_by_id(t.functions[0]);
    const ScalarFunction f1 = scalar_function_by_id(t.functions[1]);
    Worst w;
    if (s == "prop-2.1")
      w.take(check_bridge_mean(in, f0, f1, kernel_by_id(t.kernel)), "bridge norm");
    else
      w.take(check_geometric_bridge(in, f0, f1, t.param("alpha")), "geometric bridge norm");
    return from_worst(w);
  }
  if (s == "cor-2.3") {
    const PremiseCheck c = check_contraction_premise(as_map_instance(t),
                                                     kernel_by_id(t.kernel));
    Worst w;
    w.take(c.margin, "contraction bound");
    TrialOutcome out = from_worst(w);
    side(out, std::max(c.pair_level, c.premise_level) - 1.0, kPremiseSlack,
         "premise level");
    return out;
  }
  if (s == "thm-3.1") {
    const InterpolationCheck c =
        check_interpolation(as_map_instance(t), t.param("p0"), t.param("p1"),
                            t.param("alpha"), identity);
    Worst w;
    w.take(c.report, "sandwich");
    if (c.identity_report) w.take(*c.identity_report, "product");
    TrialOutcome out = from_worst(w);
    side(out, c.equivalence_residual, kEquivalenceTol, "equivalent form");
    return out;
  }
  if (s == "cor-3.3") {
    const std::optional<MapInstance> cert = certified_instance(t);
    if (!cert) throw DomainError(s + ": certified maps missing");
    const PowerFormCheck c = check_power_forms(as_map_instance(t), *cert,
                                               t.param("alpha"), t.param("r"));
    Worst w;
    w.take(c.blend, "level blend");
    w.take(c.r_form, "level power");
    w.take(c.certified, "certified blend");
    w.take(c.certified_r, "certified power");
    return from_worst(w);
  }
  if (s == "cor-3.4") {
    const MapInstance in = as_map_instance(t);
    Worst w;
    w.take(check_holder_norms(in, t.param("p0"), t.param("p1"), t.param("alpha"),
                              holder_norms(in.phi.out_dim())),
           "norm interpolation");
    return from_worst(w);
  }
  if (s == "cor-3.5") {
    const bool limit = t.variant == "limit";
    const LimitCheck c =
        check_norm_limit(as_map_instance(t), NormSpec::parse(t.norm), limit);
    Worst w;
    w.take(c.monotone_margin, "monotone in p");
    if (limit) w.take(c.limit_margin, "above limit");
    TrialOutcome out = from_worst(w);
    if (limit)
      side(out, std::isfinite(c.rate_constant) ? 0.0 : kInf, 0.0, "rate constant");
    return out;
  }
  if (s == "prop-4.1" || s == "cond-i-iii") {
    const MeanKernel f = kernel_by_id(t.kernel);
    MeanEigenCheck c;
    if (s == "prop-4.1")
      c = check_mean_lambda_min(as_map_instance(t), f, t.param("r"));
    else
      c = check_condition_iii(PsdMatrix(*t.a), PsdMatrix(*t.b), f, t.param("r"));
    Worst w;
    w.take(c.margin, "smallest eigenvalue");
    TrialOutcome out = from_worst(w);
    out.used_ladder = c.used_ladder;
    out.converged = c.converged;
    out.asserted = f.satisfies_condition_i();
    return out;
  }
  if (s == "prop-4.2") {
    const SuperCheck c =
        check_geometric_super(as_map_instance(t), certified_instance(t),
                              t.param("alpha"), t.param("r"), identity);
    Worst w;
    w.take(c.scaled, "scaled");
    if (c.certified) w.take(*c.certified, "certified");
    if (c.identity) w.take(*c.identity, "identity maps");
    TrialOutcome out = from_worst(w);
    out.used_ladder = c.used_ladder;
    out.converged = c.converged;
    return out;
  }
  if (s == "cor-4.3") {
    AntiNormSpec anti;
    anti.base = NormSpec::parse(t.norm);
    anti.p = t.param("anti_p");
    Worst w;
    w.take(check_anti_norm_monotone(as_map_instance(t), t.param("alpha"), anti),
           "anti-norm monotone in p");
    return from_worst(w);
  }
  if (s == "eq-4.7" || s == "prop-4.6" || s == "lemma-4.7") {
    if (!t.a || !t.e) throw DomainError(s + ": instance lacks A or E");
    const PsdMatrix a(*t.a);
    const Projection e(*t.e);
    Worst w;
    if (s == "eq-4.7") {
      w.take(check_compression_interpolation(a, e, t.param("p0"), t.param("p1"),
                                             t.param("theta")),
             "compression");
      return from_worst(w);
    }
    if (s == "prop-4.6") {
      const RangeCheck c = check_range_interpolation(
          a, e, t.param("alpha"), t.param("p0"), t.param("p1"), t.param("theta"));
      w.take(c.report, "range mean");
      TrialOutcome out = from_worst(w);
      side(out, c.route_residual, kRouteTol, "route agreement");
      return out;
    }
    w.take(-check_range_mean(a, e, kernel_by_id(t.kernel)), "route residual");
    return from_worst(w);
  }
  throw DomainError("unknown suite '" + s + "'");
}

// ---- running ---------------------------------------------------------------

namespace {

TrialOutcome safe_evaluate(const TrialInstance& t) {
  try {
    return evaluate(t);
  } catch (const ConvergenceError& e) {
    TrialOutcome out;
    out.margin = -kInf;
    out.converged = false;
    out.detail = std::string("no convergence: ") + e.what();
    return out;
  } catch (const std::exception& e) {
    TrialOutcome out;
    out.margin = std::numeric_limits<double>::quiet_NaN();
    out.detail = std::string("error: ") + e.what();
    return out;
  }
}

template <typename F>
void parallel_for(int count, int jobs, F&& body) {
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

SuiteResult run_suite(const std::string& suite, const SuiteConfig& cfg) {
  validate(cfg);
  if (!is_suite_id(suite)) throw DomainError("unknown suite '" + suite + "'");
  SuiteResult res;
  res.suite = suite;

  std::vector<TrialInstance> insts(static_cast<std::size_t>(cfg.trials));
  std::vector<TrialOutcome> outs(insts.size());
  std::mutex error_mutex;
  std::string generation_error;
  parallel_for(cfg.trials, cfg.jobs, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      insts[k] = generate_trial(suite, cfg, k);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (generation_error.empty()) generation_error = e.what();
      return;
    }
    outs[k] = safe_evaluate(insts[k]);
  });
  if (!generation_error.empty())
    throw Error(suite + ": trial generation failed: " + generation_error);

  res.worst_margin = kInf;
  res.informational_worst_margin = kInf;
  // (status rank, margin) ordering: failures first, NaN below any number
  auto badness = [](TrialStatus st, double m) {
    const int rank = st == TrialStatus::fail ? 0 : st == TrialStatus::borderline ? 1 : 2;
    return std::pair<int, double>(rank, std::isnan(m) ? -kInf : m);
  };
  std::optional<std::pair<int, double>> worst;
  auto consider = [&](const TrialInstance& inst, const TrialOutcome& out,
                      TrialStatus st, const std::string& prefix) {
    const auto key = badness(st, out.margin);
    if (worst && !(key < *worst)) return;
    worst = key;
    res.worst_margin = out.margin;
    res.worst_instance = inst;
    res.worst_detail = prefix + out.detail;
    if (!out.side_ok) res.worst_detail += "; " + out.side_detail;
  };
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const TrialOutcome& out = outs[k];
    const TrialStatus st = classify(insts[k], out, cfg.tol);
    ++res.trials;
    res.margins.push_back(out.margin);
    res.statuses.push_back(st);
    if (!out.side_ok) ++res.side_failures;
    switch (st) {
      case TrialStatus::fail: ++res.failures; break;
      case TrialStatus::borderline: ++res.borderline; break;
      case TrialStatus::inconclusive: ++res.inconclusive; break;
      case TrialStatus::informational:
        ++res.informational;
        res.informational_worst_margin =
            std::min(res.informational_worst_margin, out.margin);
        break;
      case TrialStatus::pass: break;
    }
    if (st != TrialStatus::inconclusive && st != TrialStatus::informational)
      consider(insts[k], out, st, "");
  }

  for (const TrialInstance& w : witness_instances(suite, cfg)) {
    const TrialOutcome out = safe_evaluate(w);
    const TrialStatus st = classify(w, out, cfg.tol);
    ++res.witnesses;
    ++res.trials;
    res.witness_max_abs_margin =
        std::max(res.witness_max_abs_margin, std::abs(out.margin));
    if (!out.side_ok) ++res.side_failures;
    if (st == TrialStatus::fail) {
      ++res.witness_failures;
      ++res.failures;
      consider(w, out, st, "witness: ");
    }
  }
  return res;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& suites,
                                    const SuiteConfig& cfg) {
  validate(cfg);
  for (const std::string& s : suites)
    if (!is_suite_id(s)) throw DomainError("unknown suite '" + s + "'");
  std::vector<SuiteResult> out;
  for (const std::string& s : suites) out.push_back(run_suite(s, cfg));
  return out;
}

// ---- serialization ---------------------------------------------------------

Json instance_to_json(const TrialInstance& t) {
  Json j;
  j["suite"] = t.suite;
  j["seed"] = t.seed;
  j["trial"] = t.trial;
  j["witness"] = t.witness;
  j["variant"] = t.variant;
  Json params = Json::object();
  for (const auto& [k, v] : t.params) params[k] = number_to_json(v);
  j["params"] = std::move(params);
  if (!t.kernel.empty()) j["kernel"] = t.kernel;
  if (!t.functions.empty()) j["functions"] = t.functions;
  if (!t.norm.empty()) j["norm"] = t.norm;
  if (t.a) j["a"] = matrix_to_json(*t.a);
  if (t.b) j["b"] = matrix_to_json(*t.b);
  if (t.e) j["e"] = matrix_to_json(*t.e);
  if (t.phi) j["phi"] = map_to_json(*t.phi);
  if (t.psi) j["psi"] = map_to_json(*t.psi);
  if (t.phi_c) j["phi_c"] = map_to_json(*t.phi_c);
  if (t.psi_c) j["psi_c"] = map_to_json(*t.psi_c);
  return j;
}

TrialInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance", "expected an object");
  auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) throw ParseError(std::string("instance.") + key, "missing");
      return {};
    }
    if (!j.at(key).is_string())
      throw ParseError(std::string("instance.") + key, "expected a string");
    return j.at(key).get<std::string>();
  };
  auto uint = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key)) return 0;
    if (!j.at(key).is_number_unsigned())
      throw ParseError(std::string("instance.") + key,
                       "expected a nonnegative integer");
    return j.at(key).get<std::uint64_t>();
  };
  TrialInstance t;
  t.suite = str("suite", true);
  if (!is_suite_id(t.suite))
    throw ParseError("instance.suite", "unknown suite '" + t.suite + "'");
  t.seed = uint("seed");
  t.trial = uint("trial");
  if (j.contains("witness")) {
    if (!j.at("witness").is_boolean())
      throw ParseError("instance.witness", "expected a boolean");
    t.witness = j.at("witness").get<bool>();
  }
  t.variant = str("variant", false);
  t.kernel = str("kernel", false);
  t.norm = str("norm", false);
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (!p.is_object()) throw ParseError("instance.params", "expected an object");
    for (const auto& [k, v] : p.items())
      t.params[k] = number_from_json(v, "instance.params." + k);
  }
  if (j.contains("functions")) {
    const Json& f = j.at("functions");
    if (!f.is_array()) throw ParseError("instance.functions", "expected an array");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!f[i].is_string())
        throw ParseError("instance.functions[" + std::to_string(i) + "]",
                         "expected a string");
      t.functions.push_back(f[i].get<std::string>());
    }
  }
  if (j.contains("a")) t.a = matrix_from_json(j.at("a"), "instance.a");
  if (j.contains("b")) t.b = matrix_from_json(j.at("b"), "instance.b");
  if (j.contains("e")) t.e = matrix_from_json(j.at("e"), "instance.e");
  if (j.contains("phi")) t.phi = map_from_json(j.at("phi"), "instance.phi");
  if (j.contains("psi")) t.psi = map_from_json(j.at("psi"), "instance.psi");
  if (j.contains("phi_c")) t.phi_c = map_from_json(j.at("phi_c"), "instance.phi_c");
  if (j.contains("psi_c")) t.psi_c = map_from_json(j.at("psi_c"), "instance.psi_c");
  return t;
}

Json result_to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["borderline"] = r.borderline;
  j["inconclusive"] = r.inconclusive;
  j["informational"] = r.informational;
  j["side_failures"] = r.side_failures;
  j["worst_margin"] = number_to_json(r.worst_margin);
  if (r.informational > 0)
    j["informational_worst_margin"] = number_to_json(r.informational_worst_margin);
  j["worst_detail"] = r.worst_detail;
  j["worst_instance"] =
      r.worst_instance ? instance_to_json(*r.worst_instance) : Json(nullptr);
  Json w;
  w["count"] = r.witnesses;
  w["failures"] = r.witness_failures;
  w["max_abs_margin"] = number_to_json(r.witness_max_abs_margin);
  j["witnesses"] = std::move(w);
  return j;
}

}  // namespace majorlab
