#include "widthlab/reporting.hpp"

#include <cstdio>

namespace widthlab {

using nlohmann::json;

std::string report_schema_version() { return "1.0.0"; }

json Report::to_json() const {
  json j;
  j["schema"] = report_schema_version();
  j["config"] = config;
  j["results"] = results;
  j["warnings"] = warnings;
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Report report_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.contains("config") ||
      !j.contains("results") || !j.contains("warnings"))
    throw MalformedInput("report: missing schema/config/results/warnings");
  if (j["schema"].get<std::string>() != report_schema_version())
    throw MalformedInput("report: unsupported schema " +
                         j["schema"].get<std::string>());
  Report r;
  r.config = j["config"];
  r.results = j["results"];
  r.warnings = j["warnings"].get<std::vector<std::string>>();
  return r;
}

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_vec(const Vec& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_number(v[i]);
  }
  return out;
}

std::string width_csv(const std::vector<WidthReport>& rows, double bound,
                      double slack) {
  std::string out =
      "map_id,lower,upper,witness_target,samples,mesh_scale,bound,pass\n";
  for (const WidthReport& r : rows) {
    out += r.map_id + ',' + format_number(r.lower) + ',' +
           format_number(r.upper) + ',' + format_vec(r.witness_target) + ',' +
           std::to_string(r.samples) + ',' + format_number(r.mesh_scale) + ',' +
           format_number(bound) + ',' +
           (r.lower >= bound - slack ? "true" : "false") + '\n';
  }
  return out;
}

std::string waist_csv(const std::vector<WaistReport>& rows) {
  std::string out =
      "map_id,floor,sup_length,witness_target,witness_cap_radius,pass,seed\n";
  for (const WaistReport& r : rows) {
    out += r.map_id + ',' + format_number(r.floor) + ',' +
           format_number(r.max_total_length) + ',' +
           format_vec(r.witness_target) + ',' +
           format_number(r.witness_component_cap.radius) + ',' +
           (r.pass ? "true" : "false") + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

json width_report_json(const WidthReport& rep) {
  json j;
  j["map_id"] = rep.map_id;
  j["lower"] = rep.lower;
  j["upper"] = rep.upper;
  j["witness_target"] = json::array();
  for (int i = 0; i < rep.witness_target.size(); ++i)
    j["witness_target"].push_back(rep.witness_target[i]);
  j["samples"] = rep.samples;
  j["mesh_scale"] = rep.mesh_scale;
  j["perturbations"] = rep.perturbations;
  j["exact"] = rep.exact;
  j["provenance"] = rep.exact ? "construction" : "sampling";
  return j;
}

json waist_report_json(const WaistReport& rep) {
  json j;
  j["map_id"] = rep.map_id;
  j["floor"] = rep.floor;
  j["sup_length"] = rep.max_total_length;
  j["max_component_length"] = rep.max_component_length;
  j["witness_target"] = json::array();
  for (int i = 0; i < rep.witness_target.size(); ++i)
    j["witness_target"].push_back(rep.witness_target[i]);
  j["witness_cap_radius"] = rep.witness_component_cap.radius;
  j["pass"] = rep.pass;
  j["samples"] = rep.samples;
  j["perturbations"] = rep.perturbations;
  j["seed"] = rep.seed;
  j["provenance"] = "sampling";
  return j;
}

}  // namespace widthlab
