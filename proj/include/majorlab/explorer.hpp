#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "majorlab/json_io.hpp"
#include "majorlab/linalg.hpp"
#include "majorlab/positive_maps.hpp"

namespace majorlab {

// ---- 2x2 Pauli family --------------------------------------------------------

/// A = cosh(alpha) I + sinh(alpha) x.sigma, B = cosh(beta) I + sinh(beta) y.sigma
/// with unit x, y and x.y = c, so det A = det B = 1.
struct PauliParams {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
};

/// Throws DomainError unless alpha, beta >= 0 are finite and c is in [-1, 1].
void validate(const PauliParams& params);

/// Canonical frame x = e3, y = (sqrt(1 - c^2), 0, c); `rotation`, when
/// given, conjugates both matrices by that 2x2 unitary.
std::pair<PsdMatrix, PsdMatrix> pauli_assemble(
    const PauliParams& params,
    const std::optional<ComplexMatrix>& rotation = std::nullopt);

/// Eigenvalues (lambda_1, lambda_2) of A^p + B^p from the closed form
///   cosh(ap) + cosh(bp) +- [sinh^2(ap) + sinh^2(bp) + 2c sinh(ap) sinh(bp)]^{1/2}.
/// lambda_2 is taken as det / lambda_1, with
///   det = 2 + (1 - c) cosh(ap + bp) + (1 + c) cosh(ap - bp),
/// which avoids cancellation when lambda_1 / lambda_2 is large.
std::pair<double, double> sum_spectrum_closed_form(const PauliParams& params,
                                                   double p);
/// Same two eigenvalues by assembling A^p + B^p and diagonalizing.
std::pair<double, double> sum_spectrum_direct(const PauliParams& params, double p);

/// (lambda_1 / lambda_2)^{1/2} of A^p + B^p.
double ratio_g(const PauliParams& params, double p);
/// log ratio_g, computed without forming the ratio.
double log_ratio_g(const PauliParams& params, double p);

struct ScanResult {
  PauliParams params;
  std::vector<double> grid;
  std::vector<double> g;
  std::vector<double> log_g;
  /// log g(p_{i-1}) - 2 log g(p_i) + log g(p_{i+1}), one per interior point.
  std::vector<double> second_diff;
  double min_second_diff = 0.0;
  double max_second_diff = 0.0;
  /// Grid point where max_second_diff occurs.
  double worst_p = 0.0;
  double scan_tol = 0.0;
  /// Log-concavity fails somewhere: max_second_diff > scan_tol.
  bool violation = false;
};

/// Uniform grid of `steps` points on [0, p_max]. scan_tol <= 0 selects the
/// default 1e-9 * (1 + max |log g|).
ScanResult scan_log_concavity(const PauliParams& params, double p_max = 10.0,
                              int steps = 400, double scan_tol = 0.0);

Json scan_to_json(const ScanResult& r, bool include_grid = true);
/// p, g, log_g, second_diff (empty at the end points).
std::string scan_to_csv(const ScanResult& r);

struct RandomScanSummary {
  int scans = 0;
  int violations = 0;
  double worst_max_second_diff = 0.0;
  /// max second difference / scan_tol at the worst scan.
  double worst_ratio = 0.0;
  std::optional<ScanResult> worst;
};

/// `count` scans with alpha, beta ~ U[0, 5], c ~ U[-1, 1].
RandomScanSummary random_scans(int count, std::uint64_t seed, double p_max = 10.0,
                               int steps = 400);
Json summary_to_json(const RandomScanSummary& s);

struct AgreementSummary {
  int draws = 0;
  /// max over draws of max_i |closed_i - direct_i| / (1 + lambda_1).
  double max_residual = 0.0;
  PauliParams worst_params;
  double worst_p = 0.0;
};
/// alpha, beta ~ U[0, 5], c ~ U[-1, 1], p ~ U[0, 10].
AgreementSummary closed_form_agreement(int draws, std::uint64_t seed);

// ---- counterexample searches -------------------------------------------------

enum class SearchTarget {
  /// blend of lambda(Phi(A^p) #_a Psi(B^p)) at p0, p1 against p_theta, in
  /// the log-supermajorization order.
  mean_interpolation,
  /// lambda(Phi(A^r) #_a Psi(B^r)) scaled by ||Phi(I) #_a Psi(I)||^{r-1}
  /// against lambda^r(Phi(A) #_a Psi(B)).
  better_factor,
  /// s(Phi(A^{p_a}) Psi(B^{p_a})) against the blend of the p0, p1 singular
  /// values, weak log order.
  product_interpolation,
};
const char* to_string(SearchTarget t);

struct SearchConfig {
  SearchTarget target = SearchTarget::mean_interpolation;
  int budget = 10000;
  std::uint64_t seed = 7;
  Index n = 2;
  Index m = 2;
  Index l = 2;
  double tol = 1e-8;
  /// Fraction of random draws using identity maps (n = m = l required).
  double identity_fraction = 0.25;
  /// Only identity maps.
  bool identity_only = false;
  double p_max = 3.0;
};

void validate(const SearchConfig& cfg);

struct SearchInstance {
  ComplexMatrix a, b;
  KrausMap phi, psi;
  bool identity = false;
  double p0 = 0.0, p1 = 1.0, theta = 0.5, alpha = 0.5, r = 2.0;
};

/// Margin of the searched relation (>= 0 when it holds).
double search_margin(SearchTarget target, const SearchInstance& inst);

struct SearchReport {
  SearchConfig config;
  int evaluations = 0;
  /// Draws not evaluated: cond(X) cond(Y) above 1e8 for a pair of mean
  /// arguments X, Y, or a margin that is not finite.
  int skipped = 0;
  double worst_margin = 0.0;
  std::optional<SearchInstance> worst;
  double noise_floor = 0.0;
  /// worst_margin < -noise_floor (10 tol).
  bool exceeds_noise_floor = false;
  /// Quantiles of the margins of the random phase.
  std::vector<std::pair<double, double>> quantiles;
  int below_noise_floor = 0;
  /// Worst margin by map kind.
  double worst_identity = 0.0;
  double worst_maps = 0.0;
};

/// Random draws for half the budget, then local perturbation of the eight
/// worst instances. Deterministic given the config.
SearchReport search(const SearchConfig& cfg);

Json search_instance_to_json(const SearchInstance& inst);
Json search_report_to_json(const SearchReport& r);

}  // namespace majorlab
