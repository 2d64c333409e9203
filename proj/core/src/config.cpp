#include "stretchlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "stretchlab/errors.hpp"
#include "stretchlab/mesh_io.hpp"

namespace stretchlab {

namespace {

void reject_unknown(const toml::table& table, const std::string& section,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, node] : table) {
    if (!allowed.contains(std::string(key.str()))) {
      throw InputError("unknown key [" + section + "]." + std::string(key.str()));
    }
  }
}

const toml::table* section(const toml::table& root, const std::string& name) {
  const auto* node = root.get(name);
  if (!node) return nullptr;
  const auto* t = node->as_table();
  if (!t) throw InputError("[" + name + "] must be a table");
  return t;
}

template <typename T>
void read(const toml::table* t, const std::string& sec, const std::string& key, T& out) {
  if (!t) return;
  const auto* node = t->get(key);
  if (!node) return;
  if constexpr (std::is_same_v<T, bool>) {
    auto v = node->value<bool>();
    if (!v) throw InputError("[" + sec + "]." + key + " must be a boolean");
    out = *v;
  } else if constexpr (std::is_same_v<T, std::string>) {
    auto v = node->value<std::string>();
    if (!v) throw InputError("[" + sec + "]." + key + " must be a string");
    out = *v;
  } else if constexpr (std::is_integral_v<T>) {
    if (!node->is_integer()) throw InputError("[" + sec + "]." + key + " must be an integer");
    out = static_cast<T>(*node->value<std::int64_t>());
  } else {
    auto v = node->value<double>();
    if (!v || !std::isfinite(*v)) throw InputError("[" + sec + "]." + key + " must be a finite number");
    out = *v;
  }
}

template <typename T>
void read_optional(const toml::table* t, const std::string& sec, const std::string& key,
                   std::optional<T>& out) {
  if (!t || !t->get(key)) return;
  T v{};
  read(t, sec, key, v);
  out = v;
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw InputError("[surgery].epsilon must be positive");
  const double ell = c.ell();
  for (std::size_t k = 0; k < c.R_list.size(); ++k) {
    if (!std::isfinite(c.R_list[k])) throw InputError("R values must be finite");
    if (c.R_list[k] < ell) throw InputError("every R must be >= ell = epsilon / 3");
    if (k > 0 && !(c.R_list[k] > c.R_list[k - 1])) throw InputError("R list must be strictly ascending");
  }
  if (c.mode == TargetMode::Vcm && !c.competitor_ring) {
    throw InputError("vcm mode needs [surgery].competitor_ring");
  }
  if (c.geometry.kind == GeometryKind::Mesh && (c.geometry.mesh_path.empty() || c.geometry.collar_path.empty())) {
    throw InputError("mesh geometry needs both `mesh` and `collar` paths");
  }
  if (c.C && !(*c.C >= 0.0)) throw InputError("C must be non-negative");
  if (c.relative_volume_tolerance < 0.0) throw InputError("relative volume tolerance must be non-negative");
  if (c.geometry.conformal_margin && *c.geometry.conformal_margin < 0.0) {
    throw InputError("conformal margin must be non-negative");
  }
  if (c.output.prefix.empty()) throw InputError("[output].prefix must not be empty");
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
    throw InputError(msg.str());
  }
  reject_unknown(root, "", {"geometry", "surgery", "solver", "output"});

  ExperimentConfig c;
  c.source = text;

  const auto* g = section(root, "geometry");
  if (!g) throw InputError("missing [geometry]");
  reject_unknown(*g, "geometry",
                 {"kind", "ring_vertices", "neck_fibre_size", "bands_per_side", "band_length", "flare",
                  "cap_radius", "cap_height", "cap_rings", "mesh", "collar", "conformal_margin"});
  std::string kind = "dumbbell";
  read(g, "geometry", "kind", kind);
  if (kind == "dumbbell") {
    c.geometry.kind = GeometryKind::Dumbbell;
  } else if (kind == "mesh") {
    c.geometry.kind = GeometryKind::Mesh;
  } else {
    throw InputError("[geometry].kind must be \"dumbbell\" or \"mesh\"");
  }
  auto& d = c.geometry.dumbbell;
  read(g, "geometry", "ring_vertices", d.ring_vertices);
  read(g, "geometry", "neck_fibre_size", d.neck_fibre_size);
  read(g, "geometry", "bands_per_side", d.bands_per_side);
  read(g, "geometry", "band_length", d.band_length);
  read(g, "geometry", "flare", d.flare);
  read(g, "geometry", "cap_radius", d.cap_radius);
  read(g, "geometry", "cap_height", d.cap_height);
  read(g, "geometry", "cap_rings", d.cap_rings);
  read(g, "geometry", "mesh", c.geometry.mesh_path);
  read(g, "geometry", "collar", c.geometry.collar_path);
  read_optional(g, "geometry", "conformal_margin", c.geometry.conformal_margin);
  c.geometry.mesh_path = resolve(base_dir, c.geometry.mesh_path);
  c.geometry.collar_path = resolve(base_dir, c.geometry.collar_path);

  const auto* s = section(root, "surgery");
  if (!s) throw InputError("missing [surgery]");
  reject_unknown(*s, "surgery", {"epsilon", "R", "mode", "competitor_ring", "C"});
  read(s, "surgery", "epsilon", c.epsilon);
  if (const auto* node = s->get("R")) {
    const auto* arr = node->as_array();
    if (!arr) throw InputError("[surgery].R must be an array");
    for (const auto& item : *arr) {
      if (auto str = item.value<std::string>()) {
        if (*str != "ell") throw InputError("[surgery].R entries must be numbers or \"ell\"");
        c.R_list.push_back(c.ell());
      } else if (auto v = item.value<double>()) {
        c.R_list.push_back(*v);
      } else {
        throw InputError("[surgery].R entries must be numbers or \"ell\"");
      }
    }
  }
  std::string mode = "sigma_volume";
  read(s, "surgery", "mode", mode);
  if (mode == "sigma_volume") {
    c.mode = TargetMode::SigmaVolume;
  } else if (mode == "vcm") {
    c.mode = TargetMode::Vcm;
  } else {
    throw InputError("[surgery].mode must be \"sigma_volume\" or \"vcm\"");
  }
  read_optional(s, "surgery", "competitor_ring", c.competitor_ring);
  read_optional(s, "surgery", "C", c.C);

  const auto* v = section(root, "solver");
  if (v) {
    reject_unknown(*v, "solver",
                   {"volume_tolerance", "relative_volume_tolerance", "cross_validate", "brute_face_cap",
                    "seeded", "seed_count", "bisection_steps", "repair_budget", "exact",
                    "exact_node_budget"});
    auto& st = c.solver;
    read_optional(v, "solver", "volume_tolerance", st.volume_tolerance);
    read(v, "solver", "relative_volume_tolerance", c.relative_volume_tolerance);
    read(v, "solver", "cross_validate", st.cross_validate);
    read(v, "solver", "brute_face_cap", st.brute_face_cap);
    read(v, "solver", "seeded", st.seeded);
    read(v, "solver", "seed_count", st.seed_count);
    read(v, "solver", "bisection_steps", st.bisection_steps);
    read(v, "solver", "repair_budget", st.repair_budget);
    read(v, "solver", "exact", st.exact);
    read(v, "solver", "exact_node_budget", st.exact_node_budget);
    if (st.volume_tolerance && c.relative_volume_tolerance > 0.0) {
      throw InputError("give either volume_tolerance or relative_volume_tolerance, not both");
    }
  }

  const auto* o = section(root, "output");
  if (o) {
    reject_unknown(*o, "output", {"directory", "prefix"});
    read(o, "output", "directory", c.output.directory);
    read(o, "output", "prefix", c.output.prefix);
  }

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(text, dir.empty() ? "." : dir.string());
}

}  // namespace stretchlab
