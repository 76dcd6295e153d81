#include "majorlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include "majorlab/explorer.hpp"
#include "majorlab/json_io.hpp"
#include "majorlab/linalg.hpp"
#include "majorlab/majorization.hpp"
#include "majorlab/operator_means.hpp"
#include "majorlab/theorem_suite.hpp"

namespace majorlab {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// "n,m,l"
std::array<Index, 3> parse_dims(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3)
    throw DomainError("--dims '" + text + "': expected n,m,l");
  std::array<Index, 3> d{};
  for (int i = 0; i < 3; ++i) {
    const std::string& p = parts[i];
    long v = 0;
    auto res = std::from_chars(p.data(), p.data() + p.size(), v);
    if (res.ec != std::errc{} || res.ptr != p.data() + p.size())
      throw DomainError("--dims '" + text + "': malformed entry '" + p + "'");
    d[i] = static_cast<Index>(v);
  }
  return d;
}

std::uint64_t seed_or_env(const CLI::Option* opt, std::uint64_t given,
                          std::uint64_t fallback) {
  if (opt->count() > 0) return given;
  const char* env = std::getenv("MAJORLAB_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string s(env);
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DomainError("MAJORLAB_SEED '" + s + "' is not an unsigned integer");
  return v;
}

struct Common {
  std::string out_path;
  bool canonical = false;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  void add(CLI::App* app, bool with_seed) {
    app->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    app->add_flag("--canonical", canonical, "Leave wall time out of the manifest");
    if (with_seed)
      seed_opt = app->add_option("--seed", seed, "Seed (default: MAJORLAB_SEED, then built-in)");
  }
};

Json report(const std::string& command, const Json& config, std::uint64_t seed,
            Clock::time_point start, const Common& c, Json results) {
  Json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  m["tool_version"] = kToolVersion;
  if (!c.canonical)
    m["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start).count();
  m["result_paths"] = c.out_path.empty() ? Json::array() : Json::array({c.out_path});
  Json j;
  j["schema"] = 1;
  j["manifest"] = std::move(m);
  j["results"] = std::move(results);
  return j;
}

void emit(const Json& j, const Common& c, std::ostream& out) {
  if (c.out_path.empty())
    out << j.dump(2) << '\n';
  else
    write_json_file(c.out_path, j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  f << text;
  if (!f) throw std::ios_base::failure("write failed for " + path);
}

// Matrix file read with the field name carried into error messages.
PsdMatrix read_psd(const std::string& path, const std::string& field) {
  const ComplexMatrix m = matrix_from_json(read_json_file(path), field);
  try {
    return PsdMatrix(m);
  } catch (const InvariantError& e) {
    throw ParseError(field, e.what());
  } catch (const DimensionError& e) {
    throw ParseError(field, e.what());
  }
}

SpectrumVector read_sequence(const std::string& path, const std::string& field) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("rows"))
    return eigenvalues_desc(read_psd(path, field));
  return spectrum_from_json(j, field);
}

Order parse_order(std::string s) {
  for (char& ch : s)
    if (ch == '-') ch = '_';
  if (s == "weak_log") return Order::weak_log;
  if (s == "log") return Order::log;
  if (s == "log_super") return Order::log_super;
  throw DomainError("--order '" + s + "': expected weak-log, log or log-super");
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::vector<std::string> suites;
  int trials = 200;
  std::string dims = "4,3,4";
  double tol = kDefaultTol;
  double singular_fraction = 0.25;
  std::vector<std::string> kernels;
  int jobs = 1;
  bool dump_margins = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<std::string> suites;
  for (const std::string& s : a.suites)
    for (const std::string& id : split(s, ','))
      if (!id.empty()) suites.push_back(id);
  if (suites.empty()) suites = suite_ids();
  for (const std::string& id : suites)
    if (!is_suite_id(id)) {
      err << "error: unknown suite '" << id << "'\n";
      return kExitUsage;
    }
  SuiteConfig cfg;
  cfg.trials = a.trials;
  const auto d = parse_dims(a.dims);
  cfg.n = d[0];
  cfg.m = d[1];
  cfg.l = d[2];
  cfg.seed = seed_or_env(a.common.seed_opt, a.common.seed, 42);
  cfg.tol = a.tol;
  cfg.singular_fraction = a.singular_fraction;
  for (const std::string& s : a.kernels)
    for (const std::string& id : split(s, ','))
      if (!id.empty()) cfg.kernels.push_back(id);
  cfg.jobs = a.jobs;
  validate(cfg);

  const std::vector<SuiteResult> results = run_suites(suites, cfg);
  Json arr = Json::array();
  int failures = 0;
  for (const SuiteResult& r : results) {
    failures += r.failures;
    Json j = result_to_json(r);
    if (a.dump_margins) {
      Json m = Json::array(), s = Json::array();
      for (double x : r.margins) m.push_back(number_to_json(x));
      for (TrialStatus t : r.statuses) s.push_back(to_string(t));
      j["margins"] = std::move(m);
      j["statuses"] = std::move(s);
    }
    arr.push_back(std::move(j));
    err << r.suite << ": " << r.trials << " trials, " << r.failures << " failures, "
        << r.borderline << " borderline, " << r.inconclusive << " inconclusive\n";
  }
  Json config;
  config["suites"] = suites;
  config["trials"] = cfg.trials;
  config["dims"] = {cfg.n, cfg.m, cfg.l};
  config["tol"] = cfg.tol;
  config["singular_fraction"] = cfg.singular_fraction;
  config["kernels"] = cfg.kernels;
  config["jobs"] = cfg.jobs;
  emit(report("verify", config, cfg.seed, start, a.common, std::move(arr)), a.common, out);
  return failures > 0 ? kExitFailures : kExitOk;
}

// ---- explore -----------------------------------------------------------------

struct ScanArgs {
  Common common;
  PauliParams params;
  double p_max = 10.0;
  int steps = 400;
  double scan_tol = 0.0;
  int random = 0;
  std::string csv;
  bool no_grid = false;
};

int cmd_pauli_scan(const ScanArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const std::uint64_t seed = seed_or_env(a.common.seed_opt, a.common.seed, 42);
  Json config;
  config["p_max"] = a.p_max;
  config["steps"] = a.steps;
  Json results;
  if (a.random > 0) {
    config["random"] = a.random;
    const RandomScanSummary s = random_scans(a.random, seed, a.p_max, a.steps);
    results = summary_to_json(s);
    if (!a.csv.empty() && s.worst) write_text(a.csv, scan_to_csv(*s.worst));
  } else {
    config["alpha"] = a.params.alpha;
    config["beta"] = a.params.beta;
    config["c"] = a.params.c;
    config["scan_tol"] = a.scan_tol;
    const ScanResult r = scan_log_concavity(a.params, a.p_max, a.steps, a.scan_tol);
    results = scan_to_json(r, !a.no_grid);
    if (!a.csv.empty()) write_text(a.csv, scan_to_csv(r));
  }
  emit(report("explore pauli-scan", config, seed, start, a.common, std::move(results)),
       a.common, out);
  return kExitOk;
}

struct AgreementArgs {
  Common common;
  int draws = 10000;
};

int cmd_pauli_agreement(const AgreementArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const std::uint64_t seed = seed_or_env(a.common.seed_opt, a.common.seed, 42);
  const AgreementSummary s = closed_form_agreement(a.draws, seed);
  Json r;
  r["draws"] = s.draws;
  r["max_residual"] = s.max_residual;
  r["worst_params"] = {{"alpha", s.worst_params.alpha},
                       {"beta", s.worst_params.beta},
                       {"c", s.worst_params.c}};
  r["worst_p"] = s.worst_p;
  emit(report("explore pauli-agreement", {{"draws", a.draws}}, seed, start, a.common,
              std::move(r)),
       a.common, out);
  return kExitOk;
}

struct SearchArgs {
  Common common;
  std::string target = "mean";
  int budget = 10000;
  std::string dims = "2,2,2";
  double tol = 1e-8;
  double identity_fraction = 0.25;
  bool identity_only = false;
  double p_max = 3.0;
};

int cmd_search(const SearchArgs& a, bool product, std::ostream& out) {
  const auto start = Clock::now();
  SearchConfig cfg;
  if (product)
    cfg.target = SearchTarget::product_interpolation;
  else if (a.target == "mean")
    cfg.target = SearchTarget::mean_interpolation;
  else if (a.target == "better-factor")
    cfg.target = SearchTarget::better_factor;
  else
    throw DomainError("--target '" + a.target + "': expected mean or better-factor");
  cfg.budget = a.budget;
  cfg.seed = seed_or_env(a.common.seed_opt, a.common.seed, 7);
  const auto d = parse_dims(a.dims);
  cfg.n = d[0];
  cfg.m = d[1];
  cfg.l = d[2];
  cfg.tol = a.tol;
  cfg.identity_fraction = a.identity_fraction;
  cfg.identity_only = a.identity_only;
  cfg.p_max = a.p_max;
  validate(cfg);
  Json rep = search_report_to_json(search(cfg));
  Json config = rep["config"];
  emit(report(product ? "explore remark-3.2" : "explore problem-4.4", config, cfg.seed,
              start, a.common, std::move(rep)),
       a.common, out);
  return kExitOk;
}

// ---- compute -----------------------------------------------------------------

struct MeanArgs {
  Common common;
  std::string kernel, a, b;
};

int cmd_mean(const MeanArgs& m, std::ostream& out) {
  const auto start = Clock::now();
  const MeanKernel f = kernel_by_id(m.kernel);
  const PsdMatrix a = read_psd(m.a, "a");
  const PsdMatrix b = read_psd(m.b, "b");
  if (a.dim() != b.dim())
    throw ParseError("b", "dimension " + std::to_string(b.dim()) + " differs from a (" +
                              std::to_string(a.dim()) + ")");
  const MeanResult r = mean(a, b, f);
  Json j;
  j["kernel"] = f.id();
  j["route"] = to_string(r.route);
  j["result"] = matrix_to_json(r.value.matrix());
  j["eigenvalues"] = spectrum_to_json(eigenvalues_desc(r.value));
  emit(report("compute mean", {{"kernel", m.kernel}, {"a", m.a}, {"b", m.b}}, 0, start,
              m.common, std::move(j)),
       m.common, out);
  return kExitOk;
}

struct MajorizeArgs {
  Common common;
  std::string lhs, rhs, order = "weak-log";
  double tol = kDefaultTol;
};

int cmd_majorize(const MajorizeArgs& m, std::ostream& out) {
  const auto start = Clock::now();
  const Order order = parse_order(m.order);
  const SpectrumVector a = read_sequence(m.lhs, "lhs");
  const SpectrumVector b = read_sequence(m.rhs, "rhs");
  Json j = report_to_json(majorize(order, a, b, m.tol));
  emit(report("compute majorize",
              {{"lhs", m.lhs}, {"rhs", m.rhs}, {"order", to_string(order)}, {"tol", m.tol}},
              0, start, m.common, std::move(j)),
       m.common, out);
  return kExitOk;
}

struct CompoundArgs {
  Common common;
  int k = 2;
  std::string in;
};

int cmd_compound(const CompoundArgs& c, std::ostream& out) {
  const auto start = Clock::now();
  const ComplexMatrix a = matrix_from_json(read_json_file(c.in), "in");
  if (a.rows() != a.cols()) throw ParseError("in", "matrix must be square");
  if (c.k < 1 || c.k > a.rows())
    throw DomainError("--k must lie in [1, " + std::to_string(a.rows()) + "]");
  Json j;
  j["k"] = c.k;
  j["result"] = matrix_to_json(compound(a, c.k));
  emit(report("compute compound", {{"k", c.k}, {"in", c.in}}, 0, start, c.common,
              std::move(j)),
       c.common, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Numerical checks of log-majorization inequalities for operator means"};
  app.name("majorlab");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run theorem suites");
  va.common.add(verify, true);
  verify->add_option("--suite", va.suites, "Suite ids (repeat or comma-separate; default all)");
  verify->add_option("--trials", va.trials, "Random trials per suite");
  verify->add_option("--dims", va.dims, "n,m,l");
  verify->add_option("--tol", va.tol, "Margin tolerance");
  verify->add_option("--singular-fraction", va.singular_fraction,
                     "Probability of a singular draw");
  verify->add_option("--kernels", va.kernels, "Mean kernel ids (comma-separated)");
  verify->add_option("--jobs", va.jobs, "Worker threads");
  verify->add_flag("--dump-margins", va.dump_margins, "Include every trial margin");

  CLI::App* explore = app.add_subcommand("explore", "Scans and counterexample searches");
  explore->require_subcommand(1);

  ScanArgs sa;
  CLI::App* scan = explore->add_subcommand("pauli-scan", "Log-concavity scan of the 2x2 ratio");
  sa.common.add(scan, true);
  scan->add_option("--alpha", sa.params.alpha);
  scan->add_option("--beta", sa.params.beta);
  scan->add_option("--c", sa.params.c);
  scan->add_option("--pmax", sa.p_max);
  scan->add_option("--steps", sa.steps);
  scan->add_option("--scan-tol", sa.scan_tol, "0 selects the default");
  scan->add_option("--random", sa.random, "Scan N random parameter triples");
  scan->add_option("--csv", sa.csv, "Write the curve (the worst one with --random)");
  scan->add_flag("--no-grid", sa.no_grid, "Omit the per-point arrays from the JSON");

  AgreementArgs aa;
  CLI::App* agree = explore->add_subcommand(
      "pauli-agreement", "Closed-form eigenvalues against direct diagonalization");
  aa.common.add(agree, true);
  agree->add_option("--draws", aa.draws);

  SearchArgs pa, ra;
  CLI::App* p44 = explore->add_subcommand("problem-4.4", "Search the conjectured mean interpolation");
  CLI::App* r32 = explore->add_subcommand("remark-3.2", "Search the non-symmetrized product form");
  for (auto [app_ptr, s] : {std::pair{p44, &pa}, std::pair{r32, &ra}}) {
    s->common.add(app_ptr, true);
    app_ptr->add_option("--budget", s->budget);
    app_ptr->add_option("--dims", s->dims, "n,m,l (each at most 4)");
    app_ptr->add_option("--tol", s->tol);
    app_ptr->add_option("--identity-fraction", s->identity_fraction);
    app_ptr->add_flag("--identity-only", s->identity_only);
    app_ptr->add_option("--pmax", s->p_max);
  }
  p44->add_option("--target", pa.target, "mean or better-factor");

  CLI::App* compute = app.add_subcommand("compute", "One-off calculations");
  compute->require_subcommand(1);
  MeanArgs ma;
  CLI::App* cmean = compute->add_subcommand("mean", "Operator mean of two PSD matrices");
  ma.common.add(cmean, false);
  cmean->add_option("--kernel", ma.kernel)->required();
  cmean->add_option("--a", ma.a)->required();
  cmean->add_option("--b", ma.b)->required();
  MajorizeArgs ja;
  CLI::App* cmaj = compute->add_subcommand("majorize", "Compare two sequences");
  ja.common.add(cmaj, false);
  cmaj->add_option("--lhs", ja.lhs)->required();
  cmaj->add_option("--rhs", ja.rhs)->required();
  cmaj->add_option("--order", ja.order, "weak-log, log or log-super");
  cmaj->add_option("--tol", ja.tol);
  CompoundArgs ca;
  CLI::App* ccomp = compute->add_subcommand("compound", "k-th compound matrix");
  ca.common.add(ccomp, false);
  ccomp->add_option("--k", ca.k)->required();
  ccomp->add_option("--in", ca.in)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(va, out, err);
    if (*scan) return cmd_pauli_scan(sa, out);
    if (*agree) return cmd_pauli_agreement(aa, out);
    if (*p44) return cmd_search(pa, false, out);
    if (*r32) return cmd_search(ra, true, out);
    if (*cmean) return cmd_mean(ma, out);
    if (*cmaj) return cmd_majorize(ja, out);
    if (*ccomp) return cmd_compound(ca, out);
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace majorlab
