#pragma once

// JSON and CSV forms of the library types. CSV output uses '.' decimals,
// 17 significant digits and LF line endings regardless of locale.

#include "overdet/geometry.hpp"
#include "overdet/identities.hpp"
#include "overdet/poisson2d.hpp"
#include "overdet/shape.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace overdet {

using Json = nlohmann::ordered_json;

/// {"a0": number, "cos": [...], "sin": [...]}; an optional "quad_points" is
/// honoured on input.
Json domain_to_json(const StarDomain2D& domain);
StarDomain2D domain_from_json(const Json& j, int quad_points = StarDomain2D::kDefaultQuadPoints);

Json solution_to_json(const PoissonSolution2D& sol);
PoissonSolution2D solution_from_json(const Json& j);

Json report_to_json(const IdentityReport& rep);
std::string report_csv_header();
std::string report_csv_row(const IdentityReport& rep);

Json trace_to_json(const RecoveryTrace& trace);
/// iter, deficit, cN, a0, fourier_energy
std::string trace_csv(const RecoveryTrace& trace);

std::string landscape_csv(int mode_k, const std::vector<LandscapePoint>& points);

/// 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_double(double x);

}  // namespace overdet
