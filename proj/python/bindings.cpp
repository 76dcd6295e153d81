#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "majorlab/explorer.hpp"
#include "majorlab/json_io.hpp"
#include "majorlab/linalg.hpp"
#include "majorlab/majorization.hpp"
#include "majorlab/operator_means.hpp"
#include "majorlab/theorem_suite.hpp"

namespace py = pybind11;
using namespace majorlab;

namespace {

std::vector<double> to_vec(const SpectrumVector& s) { return {s.begin(), s.end()}; }

Order order_by_name(const std::string& name) {
  if (name == "weak-log") return Order::weak_log;
  if (name == "log") return Order::log;
  if (name == "log-super") return Order::log_super;
  throw DomainError("order '" + name + "': expected weak-log, log or log-super");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of majorlab";

  py::register_exception<Error>(m, "MajorlabError", PyExc_ValueError);

  m.def("eigenvalues", [](const ComplexMatrix& a) { return to_vec(eigenvalues_desc(PsdMatrix(a))); },
        py::arg("a"), "Descending eigenvalues of a PSD matrix.");
  m.def("fractional_power",
        [](const ComplexMatrix& a, double p) { return ComplexMatrix(fractional_power(PsdMatrix(a), p).matrix()); },
        py::arg("a"), py::arg("p"));
  m.def("singular_values", [](const ComplexMatrix& x) { return to_vec(singular_values(x)); },
        py::arg("x"));
  m.def("compound", [](const ComplexMatrix& a, int k) { return compound(a, k); }, py::arg("a"),
        py::arg("k"));
  m.def(
      "mean",
      [](const ComplexMatrix& a, const ComplexMatrix& b, const std::string& kernel) {
        const MeanResult r = mean(PsdMatrix(a), PsdMatrix(b), kernel_by_id(kernel));
        return py::make_tuple(ComplexMatrix(r.value.matrix()), std::string(to_string(r.route)));
      },
      py::arg("a"), py::arg("b"), py::arg("kernel"),
      "Operator mean for a kernel id; returns (matrix, route).");
  m.def(
      "weighted_geometric",
      [](const ComplexMatrix& a, const ComplexMatrix& b, double alpha) {
        return ComplexMatrix(weighted_geometric(PsdMatrix(a), PsdMatrix(b), alpha).value.matrix());
      },
      py::arg("a"), py::arg("b"), py::arg("alpha"));
  m.def("kernel_ids", [] {
    std::vector<std::string> ids;
    for (const MeanKernel& f : catalog()) ids.push_back(f.id());
    return ids;
  });
  m.def(
      "majorize_json",
      [](std::vector<double> lhs, std::vector<double> rhs, const std::string& order, double tol) {
        return report_to_json(majorize(order_by_name(order), SpectrumVector::from_unsorted(lhs),
                                       SpectrumVector::from_unsorted(rhs), tol))
            .dump();
      },
      py::arg("lhs"), py::arg("rhs"), py::arg("order") = "weak-log", py::arg("tol") = kDefaultTol);
  m.def("suite_ids", [] { return suite_ids(); });
  m.def(
      "run_suite_json",
      [](const std::string& suite, int trials, Index n, Index mm, Index l, std::uint64_t seed,
         double tol, double singular_fraction) {
        SuiteConfig cfg;
        cfg.trials = trials;
        cfg.n = n;
        cfg.m = mm;
        cfg.l = l;
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.singular_fraction = singular_fraction;
        validate(cfg);
        py::gil_scoped_release release;
        return result_to_json(run_suite(suite, cfg)).dump();
      },
      py::arg("suite"), py::arg("trials") = 200, py::arg("n") = 4, py::arg("m") = 3,
      py::arg("l") = 4, py::arg("seed") = 42, py::arg("tol") = kDefaultTol,
      py::arg("singular_fraction") = 0.25);
  m.def(
      "pauli_scan_json",
      [](double alpha, double beta, double c, double p_max, int steps) {
        return scan_to_json(scan_log_concavity({alpha, beta, c}, p_max, steps)).dump();
      },
      py::arg("alpha"), py::arg("beta"), py::arg("c"), py::arg("p_max") = 10.0,
      py::arg("steps") = 400);
  m.def(
      "search_json",
      [](const std::string& target, int budget, std::uint64_t seed, bool identity_only) {
        SearchConfig cfg;
        if (target == "mean")
          cfg.target = SearchTarget::mean_interpolation;
        else if (target == "better-factor")
          cfg.target = SearchTarget::better_factor;
        else if (target == "product")
          cfg.target = SearchTarget::product_interpolation;
        else
          throw DomainError("target '" + target + "': expected mean, better-factor or product");
        cfg.budget = budget;
        cfg.seed = seed;
        cfg.identity_only = identity_only;
        validate(cfg);
        py::gil_scoped_release release;
        return search_report_to_json(search(cfg)).dump();
      },
      py::arg("target"), py::arg("budget") = 10000, py::arg("seed") = 7,
      py::arg("identity_only") = false);
}
