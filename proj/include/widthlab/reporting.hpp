#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "widthlab/waists.hpp"
#include "widthlab/widths.hpp"

namespace widthlab {

// Bumped on any change to the report JSON layout or CSV columns.
std::string report_schema_version();

// Report JSON top level: {"schema", "config", "results", "warnings"}.
struct Report {
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  std::string dump() const;  // deterministic, indented
};
Report report_from_json(const nlohmann::json& j);

// Deterministic float formatting shared by all CSV bodies.
std::string format_number(double x);
std::string format_vec(const Vec& v);  // semicolon-separated components

// width CSV: map_id, lower, upper, witness_target, samples, mesh_scale,
// bound, pass.
std::string width_csv(const std::vector<WidthReport>& rows, double bound,
                      double slack);

// waist CSV: map_id, floor, sup_length, witness_target, witness_cap_radius,
// pass, seed.
std::string waist_csv(const std::vector<WaistReport>& rows);

nlohmann::json width_report_json(const WidthReport& rep);
nlohmann::json waist_report_json(const WaistReport& rep);

}  // namespace widthlab
