#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "majorlab/json_io.hpp"
#include "majorlab/linalg.hpp"
#include "majorlab/majorization.hpp"
#include "majorlab/operator_means.hpp"
#include "majorlab/positive_maps.hpp"

namespace majorlab {

struct SuiteConfig {
  int trials = 200;
  Index n = 4;
  Index m = 3;
  Index l = 4;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  double singular_fraction = 0.25;
  /// Kernel ids drawn by the mean-based suites; empty means the catalog.
  std::vector<std::string> kernels;
  int jobs = 1;
};

/// Throws DomainError on trials < 1, dims outside [1, 6], bad fractions or
/// unknown kernel ids.
void validate(const SuiteConfig& cfg);

/// Everything needed to re-evaluate one trial bit for bit. Maps and
/// matrices are stored after premise enforcement (rescaling).
struct TrialInstance {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  bool witness = false;
  std::string variant;  // "maps", "identity", "limit", ...
  std::map<std::string, double> params;
  std::string kernel;
  std::vector<std::string> functions;
  std::string norm;
  std::optional<ComplexMatrix> a, b, e;
  std::optional<KrausMap> phi, psi;
  /// Certified copies of the pair (contraction or geometric variant).
  std::optional<KrausMap> phi_c, psi_c;

  double param(const std::string& key) const;
};

struct TrialOutcome {
  /// Smallest normalized margin over every asserted comparison; >= -tol
  /// when the inequality holds.
  double margin = 0.0;
  std::string detail;
  /// false for report-only checks (kernels failing condition (i)).
  bool asserted = true;
  bool used_ladder = false;
  bool converged = true;
  /// Secondary identity checks (equivalent forms, route agreement).
  bool side_ok = true;
  double side_residual = 0.0;
  std::string side_detail;
};

enum class TrialStatus { pass, borderline, fail, inconclusive, informational };
const char* to_string(TrialStatus s);

/// Witnesses must satisfy |margin| <= tol; random trials margin >= -tol.
/// Ladder-dependent or non-converged trials that would fail are
/// inconclusive.
TrialStatus classify(const TrialInstance& inst, const TrialOutcome& out,
                     double tol);

struct SuiteResult {
  std::string suite;
  int trials = 0;
  int failures = 0;
  int borderline = 0;
  int inconclusive = 0;
  int informational = 0;
  int side_failures = 0;
  int witnesses = 0;
  int witness_failures = 0;
  double witness_max_abs_margin = 0.0;
  double worst_margin = 0.0;
  double informational_worst_margin = 0.0;
  std::optional<TrialInstance> worst_instance;
  std::string worst_detail;
  /// Per random trial, in trial order.
  std::vector<double> margins;
  std::vector<TrialStatus> statuses;
};

const std::vector<std::string>& suite_ids();
bool is_suite_id(const std::string& id);

TrialInstance generate_trial(const std::string& suite, const SuiteConfig& cfg,
                             std::uint64_t index);
std::vector<TrialInstance> witness_instances(const std::string& suite,
                                             const SuiteConfig& cfg);
TrialOutcome evaluate(const TrialInstance& inst);

SuiteResult run_suite(const std::string& suite, const SuiteConfig& cfg);
std::vector<SuiteResult> run_suites(const std::vector<std::string>& suites,
                                    const SuiteConfig& cfg);

Json instance_to_json(const TrialInstance& inst);
TrialInstance instance_from_json(const Json& j);
Json result_to_json(const SuiteResult& r);

// ---- individual checks ---------------------------------------------------

/// A, B with the pair of maps acting on them.
struct MapInstance {
  PsdMatrix a;
  PsdMatrix b;
  KrausMap phi;
  KrausMap psi;
};

/// "1", "x", "x^<p>".
ScalarFunction scalar_function_by_id(const std::string& id);

/// lambda(Phi(A^p)^{1/2} Psi(B^p) Phi(A^p)^{1/2})
SpectrumVector pair_spectrum(const MapInstance& in, double p);

/// max(gamma_0, gamma_1) - lhs, relative to the larger side.
double check_bridge_mean(const MapInstance& in, const ScalarFunction& phi0,
                      const ScalarFunction& phi1, const MeanKernel& f);
/// gamma_0^{1-alpha} gamma_1^alpha - lhs, relative to the larger side.
double check_geometric_bridge(const MapInstance& in, const ScalarFunction& phi0,
                      const ScalarFunction& phi1, double alpha);

struct PremiseCheck {
  double margin = 0.0;
  /// lambda_1 of the premise sandwiches; both must be <= 1.
  double pair_level = 0.0;
  double premise_level = 0.0;
};
/// 1 - lambda_1(Phi(f*(A))^{1/2} Psi(f(B)) Phi(f*(A))^{1/2}) for an
/// instance already satisfying both premises.
PremiseCheck check_contraction_premise(const MapInstance& in, const MeanKernel& f);
/// Rescales A so that lambda_1(Phi(A)^{1/2} Psi(B) Phi(A)^{1/2}) = target.
PsdMatrix enforce_premise(const MapInstance& in, double target);

struct InterpolationCheck {
  MajorizationReport report;
  /// max_i |lambda_i - s_i^2| / lambda_1 between the sandwich eigenvalues
  /// and the squared singular values of Phi(A^p)^{1/2} Psi(B^p)^{1/2}.
  double equivalence_residual = 0.0;
  /// Full log order on s(A^p B^p); identity maps only.
  std::optional<MajorizationReport> identity_report;
};
InterpolationCheck check_interpolation(const MapInstance& in, double p0, double p1,
                                 double alpha, bool identity_maps);

struct PowerFormCheck {
  MajorizationReport blend;       // any pair
  MajorizationReport r_form;      // any pair, r-th power form
  MajorizationReport certified;   // contraction-certified pair
  MajorizationReport certified_r; // same, r-th power form
  double worst() const;
};
PowerFormCheck check_power_forms(const MapInstance& in, const MapInstance& certified,
                             double alpha, double r);

/// min over norms and r in {0.5, 1, 2} of the relative Hoelder margin.
double check_holder_norms(const MapInstance& in, double p0, double p1, double alpha,
                     const std::vector<NormSpec>& norms);

struct LimitCheck {
  std::vector<double> grid;
  std::vector<double> values;       // F(p) on the grid
  double monotone_margin = 0.0;     // min relative increment
  bool has_limit = false;
  double limit = 0.0;               // ||exp(Phi(log A) + Psi(log B))||
  double limit_margin = 0.0;        // min (F(p) - limit) / limit
  double rate_constant = 0.0;       // max (F(p) - limit) / (p limit), 3 smallest p
};
/// F(p) = ||lambda(...)^{1/p}|| on {1/64, ..., 1, 2, 4}; the limit branch
/// needs unital maps and positive definite A, B.
LimitCheck check_norm_limit(const MapInstance& in, const NormSpec& norm,
                         bool limit_branch);
const std::vector<double>& norm_limit_grid();

struct MeanEigenCheck {
  double margin = 0.0;
  bool used_ladder = false;
  bool converged = true;
};
/// c^{r-1} lambda_l(Phi(A^r) s_f Psi(B^r)) - lambda_l(Phi(A) s_f Psi(B))^r,
/// c = max(||Phi(I)||, ||Psi(I)||), relative to the larger top eigenvalue.
MeanEigenCheck check_mean_lambda_min(const MapInstance& in, const MeanKernel& f,
                              double r);
/// Condition (iii): Phi = Psi = id in the above.
MeanEigenCheck check_condition_iii(const PsdMatrix& a, const PsdMatrix& b,
                                   const MeanKernel& f, double r);

struct SuperCheck {
  MajorizationReport scaled;                        // any pair
  std::optional<MajorizationReport> certified;      // geometric-certified pair
  std::optional<MajorizationReport> identity;       // log order, id maps
  bool used_ladder = false;
  bool converged = true;
  double worst() const;
};
SuperCheck check_geometric_super(const MapInstance& in,
                          const std::optional<MapInstance>& certified,
                          double alpha, double r, bool identity_maps);

/// Min relative increment of p -> ||{Phi(A^p) #_a Psi(B^p)}^{1/p}||_! over
/// {1/4, 1/2, 1, 2, 4}; the map is nondecreasing under the geometric premise.
double check_anti_norm_monotone(const MapInstance& in, double alpha,
                     const AntiNormSpec& anti);

struct RangeCheck {
  MajorizationReport report;
  /// max |route difference| / max(1, lambda_1).
  double route_residual = 0.0;
};
RangeCheck check_range_interpolation(const PsdMatrix& a, const Projection& e, double alpha,
                          double p0, double p1, double theta);
/// ||A s_f E - (E f_perp(E A^{-1} E) E)^{-1}||_F
double check_range_mean(const PsdMatrix& a, const Projection& e,
                       const MeanKernel& f);
MajorizationReport check_compression_interpolation(const PsdMatrix& a, const Projection& e,
                               double p0, double p1, double theta);

/// (E A^{-p} E)^{alpha-1} on the range of E, descending, length rank E.
SpectrumVector compressed_power_spectrum(const PsdMatrix& a, const Projection& e,
                                         double alpha, double p);

}  // namespace majorlab
