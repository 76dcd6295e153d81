#include "majorlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace majorlab {
namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ParseError(field, what);
}

Index read_dim(const Json& j, const std::string& key, const std::string& field) {
  const std::string name = field + "." + key;
  require(j.contains(key), name, "missing");
  require(j.at(key).is_number_integer(), name, "expected an integer");
  const auto v = j.at(key).get<long long>();
  require(v >= 1, name, "must be >= 1");
  return static_cast<Index>(v);
}

Complex read_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          field, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json flat_entries(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return data;
}

ComplexMatrix read_entries(const Json& data, Index rows, Index cols,
                           const std::string& field) {
  require(data.is_array(), field, "expected an array");
  require(static_cast<Index>(data.size()) == rows * cols, field,
          "expected " + std::to_string(rows * cols) + " entries, got " +
              std::to_string(data.size()));
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = read_complex(data[idx], field + "[" + std::to_string(idx) + "]");
    }
  return m;
}

}  // namespace

Json number_to_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double number_from_json(const Json& j, const std::string& field) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  require(j.is_number(), field, "expected a number");
  return j.get<double>();
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = flat_entries(m);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& field) {
  require(j.is_object(), field, "expected an object");
  const Index rows = read_dim(j, "rows", field);
  const Index cols = read_dim(j, "cols", field);
  require(j.contains("data"), field + ".data", "missing");
  return read_entries(j.at("data"), rows, cols, field + ".data");
}

Json map_to_json(const KrausMap& phi) {
  Json j;
  j["n"] = phi.in_dim();
  j["l"] = phi.out_dim();
  Json ops = Json::array();
  for (const ComplexMatrix& v : phi.kraus_ops()) ops.push_back(flat_entries(v));
  j["kraus"] = std::move(ops);
  return j;
}

KrausMap map_from_json(const Json& j, const std::string& field) {
  require(j.is_object(), field, "expected an object");
  const Index n = read_dim(j, "n", field);
  const Index l = read_dim(j, "l", field);
  require(j.contains("kraus") && j.at("kraus").is_array(), field + ".kraus",
          "expected an array");
  std::vector<ComplexMatrix> ops;
  const Json& arr = j.at("kraus");
  for (std::size_t t = 0; t < arr.size(); ++t)
    ops.push_back(
        read_entries(arr[t], n, l, field + ".kraus[" + std::to_string(t) + "]"));
  return KrausMap(n, l, std::move(ops));
}

Json spectrum_to_json(const SpectrumVector& s) {
  Json arr = Json::array();
  for (double x : s) arr.push_back(x);
  return arr;
}

SpectrumVector spectrum_from_json(const Json& j, const std::string& field) {
  const Json* arr = &j;
  std::string name = field;
  if (j.is_object()) {
    require(j.contains("values"), field + ".values", "missing");
    arr = &j.at("values");
    name = field + ".values";
  }
  require(arr->is_array(), name, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const Json& x = (*arr)[i];
    require(x.is_number(), name + "[" + std::to_string(i) + "]",
            "expected a number");
    require(x.get<double>() >= 0.0, name + "[" + std::to_string(i) + "]",
            "negative entry");
    v.push_back(x.get<double>());
  }
  return SpectrumVector::from_unsorted(std::move(v));
}

Json report_to_json(const MajorizationReport& r) {
  Json j;
  j["order"] = to_string(r.order);
  j["verdict"] = to_string(r.verdict);
  j["tol"] = r.tol;
  j["worst_margin"] = number_to_json(r.worst_margin);
  if (r.order == Order::log) j["equality_gap"] = number_to_json(r.equality_gap);
  Json rows = Json::array();
  for (const auto& row : r.per_k) {
    Json x;
    x["k"] = row.k;
    x["lhs_log"] = number_to_json(row.lhs_log);
    x["rhs_log"] = number_to_json(row.rhs_log);
    x["margin"] = number_to_json(row.margin);
    rows.push_back(std::move(x));
  }
  j["per_k"] = std::move(rows);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace majorlab
