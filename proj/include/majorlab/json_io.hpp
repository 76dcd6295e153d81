#pragma once

#include <string>

#include <json.hpp>

#include "majorlab/linalg.hpp"
#include "majorlab/majorization.hpp"
#include "majorlab/positive_maps.hpp"

namespace majorlab {

using Json = nlohmann::ordered_json;

/// Non-finite values become null (JSON has no inf/nan).
Json number_to_json(double x);
/// null reads back as +inf.
double number_from_json(const Json& j, const std::string& field);

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& field = "matrix");

/// {"n": n, "l": l, "kraus": [[[re, im], ...], ...]}, each op flat row-major.
Json map_to_json(const KrausMap& phi);
KrausMap map_from_json(const Json& j, const std::string& field = "map");

/// Plain array of numbers, or {"values": [...]}.
Json spectrum_to_json(const SpectrumVector& s);
SpectrumVector spectrum_from_json(const Json& j, const std::string& field = "values");

Json report_to_json(const MajorizationReport& r);

Json read_json_file(const std::string& path);
/// Throws std::ios_base::failure on I/O errors.
void write_json_file(const std::string& path, const Json& j);

}  // namespace majorlab
