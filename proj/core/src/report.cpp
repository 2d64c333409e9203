#include "stretchlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stretchlab/errors.hpp"
#include "stretchlab/mesh_io.hpp"

namespace stretchlab {

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

const char* mode_name(TargetMode m) { return m == TargetMode::Vcm ? "vcm" : "sigma_volume"; }

std::string status(const ExperimentRow& row) {
  if (!row.error.empty()) return "error: " + row.error;
  if (row.skipped) return "skipped: " + row.skip_reason;
  return "ok";
}

}  // namespace

std::string record_csv(const ExperimentRecord& rec) {
  std::ostringstream out;
  out << "R,per_target,per_sigma,vol_target,vol_omega,vol_complement,vol_total,vol_cylinder,"
         "vol_outside_cylinder,rim_distance,volume_tolerance,solver_perimeter,solver_volume,method,"
         "certified,boundary_is_target,region_faces,delta,diameter,components,C,complement_bound,"
         "min_side_volume,exceeds_bound,property1,bookkeeping,area_gap,status\n";
  for (const auto& r : rec.rows) {
    const auto n = [&](double x) { return csv_number(x) + ","; };
    const auto b = [&](bool x) { return std::string(x ? "1" : "0") + ","; };
    out << n(r.R) << n(r.per_target) << n(r.per_sigma) << n(r.vol_target) << n(r.vol_omega)
        << n(r.vol_complement) << n(r.vol_total) << n(r.vol_cylinder) << n(r.vol_outside_cylinder)
        << n(r.rim_distance) << n(r.volume_tolerance);
    if (r.solved) {
      out << n(r.result.perimeter) << n(r.result.volume) << to_string(r.result.method) << ","
          << b(r.result.certified_optimal) << b(r.boundary_is_target) << r.result.region.size() << ","
          << n(r.bounds.delta) << n(r.bounds.diameter) << r.bounds.components << "," << n(r.C)
          << n(r.bounds.complement_bound) << n(r.bounds.min_side_volume) << b(r.bounds.exceeds_bound);
    } else {
      out << ",,,,,,,,,,,,,";
    }
    out << b(r.property1) << b(r.bookkeeping) << n(r.area_gap) << csv_field(status(r)) << "\n";
  }
  return out.str();
}

std::string record_json(const ExperimentRecord& rec, const ExperimentConfig& config) {
  using nlohmann::json;
  json j;
  j["mode"] = mode_name(rec.mode);
  j["epsilon"] = rec.epsilon;
  j["ell"] = rec.ell;
  j["faces"] = rec.face_count;
  j["per_sigma_original"] = rec.per_sigma_original;
  j["competitor_ring"] = rec.competitor_ring ? json(*rec.competitor_ring) : json(nullptr);
  j["stability"] = {{"lambda_min_before", rec.stability_before},
                    {"lambda_min_after", rec.stability_after},
                    {"conformal_quadratic", rec.conformal_quadratic}};
  j["R_star"] = rec.R_star ? json(*rec.R_star) : json(nullptr);
  j["checks"] = {{"property1", rec.property1_ok},
                 {"perimeter_preserved", rec.surgery.perimeter_preserved},
                 {"volumes_grow", rec.surgery.volumes_grow},
                 {"outside_volume_constant", rec.surgery.outside_volume_constant},
                 {"cylinder_affine", rec.surgery.cylinder_affine},
                 {"cylinder_slope", rec.surgery.cylinder_slope},
                 {"cylinder_residual", rec.surgery.cylinder_residual},
                 {"dominates", rec.surgery.dominates},
                 {"local", rec.surgery.local},
                 {"distance_realized", rec.surgery.distance_realized},
                 {"threshold_monotone", rec.threshold_monotone},
                 {"bookkeeping", rec.bookkeeping_ok},
                 {"bounds_dichotomy", rec.dichotomy_ok}};
  j["ok"] = rec.ok();
  j["violations"] = rec.violations;
  j["anomalies"] = rec.anomalies;
  json rows = json::array();
  for (const auto& r : rec.rows) {
    json row{{"R", r.R},
             {"per_sigma", r.per_sigma},
             {"per_target", r.per_target},
             {"vol_target", r.vol_target},
             {"vol_omega", r.vol_omega},
             {"status", status(r)}};
    if (r.solved) {
      row["perimeter"] = r.result.perimeter;
      row["volume"] = r.result.volume;
      row["method"] = to_string(r.result.method);
      row["certified"] = r.result.certified_optimal;
      row["boundary_is_target"] = r.boundary_is_target;
      row["region"] = std::vector<int>(r.result.region.faces().begin(), r.result.region.faces().end());
      row["delta"] = r.bounds.delta;
      row["components"] = r.bounds.components;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["config"] = config.source;
  j["provenance"] = {{"tool", "stretchlab"}, {"version", STRETCHLAB_VERSION}};
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(const ExperimentRecord& record, const ExperimentConfig& config,
                                     ReportFormat format) {
  std::vector<std::string> paths;
  const auto base = std::filesystem::path(config.output.directory) / config.output.prefix;
  if (format != ReportFormat::Json) {
    const std::string p = base.string() + ".csv";
    write_text_file(p, record_csv(record));
    paths.push_back(p);
  }
  if (format != ReportFormat::Csv) {
    const std::string p = base.string() + ".json";
    write_text_file(p, record_json(record, config));
    paths.push_back(p);
  }
  return paths;
}

}  // namespace stretchlab
