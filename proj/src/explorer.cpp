#include "majorlab/explorer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "majorlab/majorization.hpp"
#include "majorlab/operator_means.hpp"
#include "majorlab/random.hpp"

namespace majorlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kConditionGate = 1e-8;

std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ComplexMatrix pauli(int i) {
  ComplexMatrix s(2, 2);
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

PauliParams draw_params(Rng& rng) {
  PauliParams p;
  p.alpha = rng.uniform(0.0, 5.0);
  p.beta = rng.uniform(0.0, 5.0);
  p.c = rng.uniform(-1.0, 1.0);
  return p;
}

Json params_to_json(const PauliParams& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["c"] = p.c;
  return j;
}

}  // namespace

// ---- 2x2 Pauli family --------------------------------------------------------

void validate(const PauliParams& p) {
  if (!(std::isfinite(p.alpha) && p.alpha >= 0.0))
    throw DomainError("alpha must be a finite number >= 0");
  if (!(std::isfinite(p.beta) && p.beta >= 0.0))
    throw DomainError("beta must be a finite number >= 0");
  if (!(p.c >= -1.0 && p.c <= 1.0)) throw DomainError("c must lie in [-1, 1]");
}

std::pair<PsdMatrix, PsdMatrix> pauli_assemble(
    const PauliParams& params, const std::optional<ComplexMatrix>& rotation) {
  validate(params);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double s = std::sqrt(std::max(0.0, 1.0 - params.c * params.c));
  ComplexMatrix a = std::cosh(params.alpha) * id + std::sinh(params.alpha) * pauli(3);
  ComplexMatrix b = std::cosh(params.beta) * id +
                    std::sinh(params.beta) * (s * pauli(1) + params.c * pauli(3));
  if (rotation) {
    const ComplexMatrix& u = *rotation;
    if (u.rows() != 2 || u.cols() != 2)
      throw DimensionError("pauli_assemble: rotation must be 2 x 2");
    a = u * a * u.adjoint();
    b = u * b * u.adjoint();
  }
  return {PsdMatrix(HermitianMatrix((a + a.adjoint()) * 0.5)),
          PsdMatrix(HermitianMatrix((b + b.adjoint()) * 0.5))};
}

std::pair<double, double> sum_spectrum_closed_form(const PauliParams& params,
                                                   double p) {
  validate(params);
  if (!(p >= 0.0)) throw DomainError("p must be >= 0");
  const double x = params.alpha * p, y = params.beta * p, c = params.c;
  const double sx = std::sinh(x), sy = std::sinh(y);
  // sinh^2 x + sinh^2 y + 2c sinh x sinh y as a sum of squares
  const double u = sx + c * sy;
  const double r = std::sqrt(u * u + std::max(0.0, 1.0 - c * c) * sy * sy);
  const double l1 = std::cosh(x) + std::cosh(y) + r;
  const double det = 2.0 + (1.0 - c) * std::cosh(x + y) + (1.0 + c) * std::cosh(x - y);
  return {l1, det / l1};
}

std::pair<double, double> sum_spectrum_direct(const PauliParams& params, double p) {
  if (!(p >= 0.0)) throw DomainError("p must be >= 0");
  const auto [a, b] = pauli_assemble(params);
  const PsdMatrix s(HermitianMatrix(fractional_power(a, p).matrix() +
                                    fractional_power(b, p).matrix()));
  const SpectrumVector ev = eigenvalues_desc(s);
  return {ev[0], ev[1]};
}

double ratio_g(const PauliParams& params, double p) {
  return std::exp(log_ratio_g(params, p));
}

double log_ratio_g(const PauliParams& params, double p) {
  const auto [l1, l2] = sum_spectrum_closed_form(params, p);
  return 0.5 * (std::log(l1) - std::log(l2));
}

ScanResult scan_log_concavity(const PauliParams& params, double p_max, int steps,
                              double scan_tol) {
  validate(params);
  if (steps < 3) throw DomainError("steps must be >= 3");
  if (!(p_max > 0.0) || !std::isfinite(p_max))
    throw DomainError("p_max must be a finite number > 0");
  ScanResult r;
  r.params = params;
  double max_abs = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double p = p_max * i / (steps - 1);
    const double lg = log_ratio_g(params, p);
    r.grid.push_back(p);
    r.log_g.push_back(lg);
    r.g.push_back(std::exp(lg));
    max_abs = std::max(max_abs, std::abs(lg));
  }
  r.scan_tol = scan_tol > 0.0 ? scan_tol : 1e-9 * (1.0 + max_abs);
  r.min_second_diff = kInf;
  r.max_second_diff = -kInf;
  for (int i = 1; i + 1 < steps; ++i) {
    const double d = r.log_g[i - 1] - 2.0 * r.log_g[i] + r.log_g[i + 1];
    r.second_diff.push_back(d);
    r.min_second_diff = std::min(r.min_second_diff, d);
    if (d > r.max_second_diff) {
      r.max_second_diff = d;
      r.worst_p = r.grid[i];
    }
  }
  r.violation = r.max_second_diff > r.scan_tol;
  return r;
}

Json scan_to_json(const ScanResult& r, bool include_grid) {
  Json j;
  j["params"] = params_to_json(r.params);
  j["steps"] = r.grid.size();
  j["p_max"] = r.grid.empty() ? 0.0 : r.grid.back();
  j["scan_tol"] = r.scan_tol;
  j["min_second_diff"] = r.min_second_diff;
  j["max_second_diff"] = r.max_second_diff;
  j["worst_p"] = r.worst_p;
  j["violation"] = r.violation;
  if (include_grid) {
    j["grid"] = r.grid;
    j["g"] = r.g;
    j["log_g"] = r.log_g;
    j["second_diff"] = r.second_diff;
  }
  return j;
}

std::string scan_to_csv(const ScanResult& r) {
  std::ostringstream os;
  os << "p,g,log_g,second_diff\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    os << fmt(r.grid[i]) << ',' << fmt(r.g[i]) << ',' << fmt(r.log_g[i]) << ',';
    if (i > 0 && i + 1 < r.grid.size()) os << fmt(r.second_diff[i - 1]);
    os << '\n';
  }
  return os.str();
}

RandomScanSummary random_scans(int count, std::uint64_t seed, double p_max,
                               int steps) {
  if (count < 1) throw DomainError("count must be >= 1");
  Rng rng(derive_seed(seed, hash_name("pauli-scan"), 0));
  RandomScanSummary s;
  s.worst_ratio = -kInf;
  for (int i = 0; i < count; ++i) {
    ScanResult r = scan_log_concavity(draw_params(rng), p_max, steps);
    ++s.scans;
    if (r.violation) ++s.violations;
    const double ratio = r.max_second_diff / r.scan_tol;
    if (ratio > s.worst_ratio) {
      s.worst_ratio = ratio;
      s.worst_max_second_diff = r.max_second_diff;
      s.worst = std::move(r);
    }
  }
  return s;
}

Json summary_to_json(const RandomScanSummary& s) {
  Json j;
  j["scans"] = s.scans;
  j["violations"] = s.violations;
  j["worst_max_second_diff"] = s.worst_max_second_diff;
  j["worst_ratio_to_tol"] = s.worst_ratio;
  j["worst"] = s.worst ? scan_to_json(*s.worst, false) : Json(nullptr);
  return j;
}

AgreementSummary closed_form_agreement(int draws, std::uint64_t seed) {
  if (draws < 1) throw DomainError("draws must be >= 1");
  Rng rng(derive_seed(seed, hash_name("pauli-agreement"), 0));
  AgreementSummary s;
  for (int i = 0; i < draws; ++i) {
    const PauliParams params = draw_params(rng);
    const double p = rng.uniform(0.0, 10.0);
    const auto [c1, c2] = sum_spectrum_closed_form(params, p);
    const auto [d1, d2] = sum_spectrum_direct(params, p);
    const double res = std::max(std::abs(c1 - d1), std::abs(c2 - d2)) / (1.0 + c1);
    ++s.draws;
    if (res > s.max_residual || i == 0) {
      s.max_residual = res;
      s.worst_params = params;
      s.worst_p = p;
    }
  }
  return s;
}

// ---- counterexample searches -------------------------------------------------

const char* to_string(SearchTarget t) {
  switch (t) {
    case SearchTarget::mean_interpolation: return "mean_interpolation";
    case SearchTarget::better_factor: return "better_factor";
    case SearchTarget::product_interpolation: return "product_interpolation";
  }
  return "?";
}

void validate(const SearchConfig& cfg) {
  if (cfg.budget < 2) throw DomainError("budget must be >= 2");
  for (Index d : {cfg.n, cfg.m, cfg.l})
    if (d < 1 || d > 4) throw DomainError("dimensions must lie in [1, 4]");
  if (cfg.identity_only && !(cfg.n == cfg.m && cfg.m == cfg.l))
    throw DomainError("identity maps need n = m = l");
  if (!(cfg.tol > 0.0)) throw DomainError("tol must be > 0");
  if (!(cfg.identity_fraction >= 0.0 && cfg.identity_fraction <= 1.0))
    throw DomainError("identity_fraction must lie in [0, 1]");
  if (!(cfg.p_max > 0.0) || !std::isfinite(cfg.p_max))
    throw DomainError("p_max must be a finite number > 0");
}

namespace {

SpectrumVector mean_spectrum(const SearchInstance& in, double p) {
  const PsdMatrix a(in.a), b(in.b);
  return eigenvalues_desc(weighted_geometric(in.phi.apply(fractional_power(a, p)),
                                             in.psi.apply(fractional_power(b, p)),
                                             in.alpha)
                              .value);
}

SearchInstance draw_instance(const SearchConfig& cfg, Rng& rng) {
  SearchInstance s{ComplexMatrix(), ComplexMatrix(), KrausMap::identity(1),
                   KrausMap::identity(1)};
  const bool square = cfg.n == cfg.m && cfg.m == cfg.l;
  s.identity = cfg.identity_only || (square && rng.bernoulli(cfg.identity_fraction));
  s.a = random_pd(cfg.n, rng, 1e2).matrix();
  s.b = random_pd(cfg.m, rng, 1e2).matrix();
  if (s.identity) {
    s.phi = KrausMap::identity(cfg.n);
    s.psi = KrausMap::identity(cfg.m);
  } else {
    s.phi = random_map(cfg.n, cfg.l, rng.uniform_int(1, 3), MapMode::plain, rng);
    s.psi = random_map(cfg.m, cfg.l, rng.uniform_int(1, 3), MapMode::plain, rng);
  }
  s.p0 = rng.uniform(0.0, cfg.p_max);
  s.p1 = rng.uniform(0.0, cfg.p_max);
  s.theta = rng.uniform(0.0, 1.0);
  s.alpha = rng.uniform(0.01, 0.99);
  s.r = rng.uniform(1.0, 4.0);
  return s;
}

// Hermitian Gaussian perturbation, kept positive definite with condition
// number at most 1e3.
ComplexMatrix jitter_pd(const ComplexMatrix& x, double scale, Rng& rng) {
  const Index n = x.rows();
  const ComplexMatrix g = random_gaussian(n, n, rng);
  const ComplexMatrix h = (g + g.adjoint()) * 0.5;
  const double size = x.norm() / std::max(1.0, std::sqrt(double(n)));
  const ComplexMatrix y = x + scale * size * h / std::max(1e-300, h.norm());
  const EigenDecomposition e = eig_hermitian(HermitianMatrix((y + y.adjoint()) * 0.5));
  const double floor = 1e-3 * std::max(e.values(0), 1e-300);
  std::vector<double> v(e.values.data(), e.values.data() + e.values.size());
  for (double& t : v) t = std::max(t, floor);
  return PsdMatrix::from_spectrum(e.vectors, v).matrix();
}

KrausMap jitter_map(const KrausMap& phi, double scale, Rng& rng) {
  std::vector<ComplexMatrix> ops;
  for (const ComplexMatrix& v : phi.kraus_ops()) {
    const ComplexMatrix g = random_gaussian(v.rows(), v.cols(), rng);
    ops.push_back(v + scale * v.norm() * g / std::max(1e-300, g.norm()));
  }
  return KrausMap(phi.in_dim(), phi.out_dim(), std::move(ops));
}

SearchInstance perturb(const SearchInstance& s, const SearchConfig& cfg,
                       double scale, Rng& rng) {
  SearchInstance t = s;
  t.a = jitter_pd(s.a, scale, rng);
  t.b = jitter_pd(s.b, scale, rng);
  if (!s.identity) {
    t.phi = jitter_map(s.phi, scale, rng);
    t.psi = jitter_map(s.psi, scale, rng);
  }
  auto clamp = [](double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); };
  t.p0 = clamp(s.p0 + scale * cfg.p_max * rng.normal(), 0.0, cfg.p_max);
  t.p1 = clamp(s.p1 + scale * cfg.p_max * rng.normal(), 0.0, cfg.p_max);
  t.theta = clamp(s.theta + scale * rng.normal(), 0.0, 1.0);
  t.alpha = clamp(s.alpha + scale * rng.normal(), 0.01, 0.99);
  t.r = clamp(s.r + scale * 3.0 * rng.normal(), 1.0, 6.0);
  return t;
}

// The two mean arguments together stay within condition number 1e8; beyond
// that the local phase mostly finds rounding error.
bool well_conditioned(SearchTarget target, const SearchInstance& in) {
  std::vector<double> ps;
  switch (target) {
    case SearchTarget::mean_interpolation:
      ps = {in.p0, in.p1, (1.0 - in.theta) * in.p0 + in.theta * in.p1};
      break;
    case SearchTarget::better_factor: ps = {0.0, 1.0, in.r}; break;
    case SearchTarget::product_interpolation:
      ps = {in.p0, in.p1, (1.0 - in.alpha) * in.p0 + in.alpha * in.p1};
      break;
  }
  const PsdMatrix a(in.a), b(in.b);
  for (double p : ps) {
    const PsdMatrix x = in.phi.apply(fractional_power(a, p));
    const PsdMatrix y = in.psi.apply(fractional_power(b, p));
    if (!(x.lambda_min() * y.lambda_min() >=
          kConditionGate * x.lambda_max() * y.lambda_max()))
      return false;
  }
  return true;
}

}  // namespace

double search_margin(SearchTarget target, const SearchInstance& in) {
  switch (target) {
    case SearchTarget::mean_interpolation: {
      const double pt = (1.0 - in.theta) * in.p0 + in.theta * in.p1;
      return log_supermajorize(power_blend(mean_spectrum(in, in.p0),
                                           mean_spectrum(in, in.p1), in.theta),
                               mean_spectrum(in, pt))
          .worst_margin;
    }
    case SearchTarget::better_factor: {
      const double level =
          operator_norm(weighted_geometric(in.phi.apply_identity(),
                                           in.psi.apply_identity(), in.alpha)
                            .value);
      return log_supermajorize(
                 mean_spectrum(in, in.r).scaled(std::pow(level, in.r - 1.0)),
                 mean_spectrum(in, 1.0).pow(in.r))
          .worst_margin;
    }
    case SearchTarget::product_interpolation: {
      const PsdMatrix a(in.a), b(in.b);
      auto s = [&](double p) {
        return product_singular_values(in.phi.apply(fractional_power(a, p)), 1.0,
                                       in.psi.apply(fractional_power(b, p)), 1.0);
      };
      const double pa = (1.0 - in.alpha) * in.p0 + in.alpha * in.p1;
      return weak_log_majorize(s(pa), power_blend(s(in.p0), s(in.p1), in.alpha))
          .worst_margin;
    }
  }
  throw DomainError("unknown search target");
}

SearchReport search(const SearchConfig& cfg) {
  validate(cfg);
  SearchReport rep;
  rep.config = cfg;
  rep.noise_floor = 10.0 * cfg.tol;
  rep.worst_margin = kInf;
  rep.worst_identity = kInf;
  rep.worst_maps = kInf;
  Rng rng(derive_seed(cfg.seed, hash_name(to_string(cfg.target)), 0));

  auto record = [&](const SearchInstance& s, double m) {
    ++rep.evaluations;
    if (m < -rep.noise_floor) ++rep.below_noise_floor;
    double& kind = s.identity ? rep.worst_identity : rep.worst_maps;
    kind = std::min(kind, m);
    if (m < rep.worst_margin) {
      rep.worst_margin = m;
      rep.worst = s;
    }
  };
  auto margin_of = [&](const SearchInstance& s) -> std::optional<double> {
    try {
      if (!well_conditioned(cfg.target, s)) {
        ++rep.skipped;
        return std::nullopt;
      }
      const double m = search_margin(cfg.target, s);
      if (std::isfinite(m)) return m;
    } catch (const Error&) {
    }
    ++rep.skipped;
    return std::nullopt;
  };

  const int random_budget = cfg.budget / 2;
  std::vector<std::pair<double, SearchInstance>> pool;
  std::vector<double> margins;
  for (int i = 0; i < random_budget; ++i) {
    SearchInstance s = draw_instance(cfg, rng);
    const auto m = margin_of(s);
    if (!m) continue;
    record(s, *m);
    margins.push_back(*m);
    pool.emplace_back(*m, std::move(s));
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  if (pool.size() > 8) pool.erase(pool.begin() + 8, pool.end());

  // local descent from the worst random draws
  const int local_budget = cfg.budget - random_budget;
  const int per_start = pool.empty() ? 0 : local_budget / static_cast<int>(pool.size());
  for (auto& [best, inst] : pool) {
    double scale = 0.1;
    for (int k = 0; k < per_start; ++k) {
      SearchInstance cand = perturb(inst, cfg, scale, rng);
      const auto m = margin_of(cand);
      if (!m) continue;
      record(cand, *m);
      if (*m < best) {
        best = *m;
        inst = std::move(cand);
        scale = std::min(0.5, scale * 1.5);
      } else {
        scale = std::max(1e-4, scale * 0.8);
      }
    }
  }

  if (!margins.empty()) {
    std::vector<double> sorted = margins;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.0, 0.01, 0.05, 0.5, 1.0}) {
      const auto idx = static_cast<std::size_t>(q * double(sorted.size() - 1) + 0.5);
      rep.quantiles.emplace_back(q, sorted[idx]);
    }
  }
  if (rep.evaluations == 0) rep.worst_margin = 0.0;
  rep.exceeds_noise_floor = rep.worst_margin < -rep.noise_floor;
  return rep;
}

Json search_instance_to_json(const SearchInstance& s) {
  Json j;
  j["identity"] = s.identity;
  j["a"] = matrix_to_json(s.a);
  j["b"] = matrix_to_json(s.b);
  j["phi"] = map_to_json(s.phi);
  j["psi"] = map_to_json(s.psi);
  j["p0"] = s.p0;
  j["p1"] = s.p1;
  j["theta"] = s.theta;
  j["alpha"] = s.alpha;
  j["r"] = s.r;
  return j;
}

Json search_report_to_json(const SearchReport& r) {
  Json j;
  Json cfg;
  cfg["target"] = to_string(r.config.target);
  cfg["budget"] = r.config.budget;
  cfg["seed"] = r.config.seed;
  cfg["dims"] = {r.config.n, r.config.m, r.config.l};
  cfg["tol"] = r.config.tol;
  cfg["identity_fraction"] = r.config.identity_fraction;
  cfg["identity_only"] = r.config.identity_only;
  cfg["p_max"] = r.config.p_max;
  j["config"] = std::move(cfg);
  j["evaluations"] = r.evaluations;
  j["skipped"] = r.skipped;
  j["worst_margin"] = number_to_json(r.worst_margin);
  j["noise_floor"] = r.noise_floor;
  j["exceeds_noise_floor"] = r.exceeds_noise_floor;
  j["below_noise_floor"] = r.below_noise_floor;
  j["worst_identity"] = number_to_json(r.worst_identity);
  j["worst_maps"] = number_to_json(r.worst_maps);
  Json q = Json::array();
  for (const auto& [p, v] : r.quantiles) q.push_back({{"q", p}, {"margin", number_to_json(v)}});
  j["random_phase_quantiles"] = std::move(q);
  j["worst_instance"] = r.worst ? search_instance_to_json(*r.worst) : Json(nullptr);
  return j;
}

}  // namespace majorlab
