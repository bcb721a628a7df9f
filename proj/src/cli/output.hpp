#pragma once

// JSON encodings of scalars, polynomials and reports.
// Exact values: {"exact": "p/q", "decimal": "<20 digits>"}; float values: {"decimal": ...}.
// Certified approximations add "approximate": true and, for roots, the interval.

#include <string>
#include <vector>

#include <json.hpp>

#include "qes/coulomb.hpp"
#include "qes/models.hpp"
#include "qes/poly.hpp"
#include "qes/radial.hpp"
#include "qes/roots.hpp"
#include "qes/spectra.hpp"

namespace qes::cli {

using json = nlohmann::ordered_json;

inline constexpr int kDecimalDigits = 20;

json encode(const Scalar& x);
json encode_approx(const Scalar& x);
json encode(long double x);
json encode_root(const IsolatedRoot& r);
json encode(const PolyE& p);
json encode(const std::vector<Scalar>& xs);
json encode(const ReducedModel& m);
json encode(const CoulombModel& m);
json encode(const ResidualReport& r);

json error_document(const std::string& kind, const std::string& message, int exit_code);

/// Pretty JSON text with a trailing newline.
std::string render(const json& doc);

}  // namespace qes::cli
