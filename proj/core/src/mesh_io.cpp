#include "stretchlab/mesh_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stretchlab/errors.hpp"

namespace stretchlab {

using nlohmann::json;

namespace {

std::string lower_extension(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T get_or_throw(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("malformed field '") + what + "'");
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

TriangulatedSurface parse_off(const std::string& text) {
  // Strip comments, then read whitespace separated tokens.
  std::string body;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    body += line;
    body += '\n';
  }
  std::istringstream in(body);
  std::string header;
  if (!(in >> header) || header != "OFF") throw InputError("OFF: missing header");
  long nv = 0, nf = 0, ne = 0;
  if (!(in >> nv >> nf >> ne) || nv <= 0 || nf <= 0) throw InputError("OFF: bad counts");
  std::vector<Point3> pos(nv);
  for (auto& p : pos) {
    if (!(in >> p[0] >> p[1] >> p[2])) throw InputError("OFF: truncated vertex list");
  }
  std::vector<Triangle> faces(nf);
  for (auto& t : faces) {
    int k = 0;
    if (!(in >> k)) throw InputError("OFF: truncated face list");
    if (k != 3) throw InputError("OFF: only triangular faces are supported");
    if (!(in >> t[0] >> t[1] >> t[2])) throw InputError("OFF: truncated face list");
    // Optional per-face colour on the rest of the line is ignored.
    std::string rest;
    std::getline(in, rest);
  }
  return TriangulatedSurface::from_positions(std::move(pos), std::move(faces));
}

MeshData parse_mesh_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("faces")) throw InputError("mesh JSON needs 'faces'");
  auto faces = get_or_throw<std::vector<Triangle>>(j["faces"], "faces");
  std::optional<std::vector<Point3>> positions;
  if (j.contains("vertices")) positions = get_or_throw<std::vector<Point3>>(j["vertices"], "vertices");

  int vertex_count = 0;
  for (const auto& t : faces) {
    for (int v : t) {
      if (v < 0) throw InputError("negative vertex index");
      vertex_count = std::max(vertex_count, v + 1);
    }
  }
  if (positions) {
    if (static_cast<int>(positions->size()) < vertex_count) throw InputError("face references unknown vertex");
    vertex_count = static_cast<int>(positions->size());
  }

  MeshData out{[&] {
    if (!j.contains("edge_lengths")) {
      if (!positions) throw InputError("mesh JSON needs 'edge_lengths' or 'vertices'");
      return TriangulatedSurface::from_positions(std::move(*positions), std::move(faces));
    }
    std::map<EdgeKey, double> lengths;
    for (const auto& row : j["edge_lengths"]) {
      if (!row.is_array() || row.size() != 3) throw InputError("edge_lengths rows are [u, v, length]");
      const int u = get_or_throw<int>(row[0], "edge_lengths");
      const int v = get_or_throw<int>(row[1], "edge_lengths");
      const double l = get_or_throw<double>(row[2], "edge_lengths");
      if (u == v || u < 0 || v < 0) throw InputError("bad edge in edge_lengths");
      if (!lengths.emplace(make_edge_key(u, v), l).second) throw InputError("duplicate edge in edge_lengths");
    }
    return TriangulatedSurface::from_lengths(vertex_count, std::move(faces), lengths, std::move(positions));
  }(), {}, {}};

  if (j.contains("provenance")) {
    for (const auto& [key, value] : j["provenance"].items()) {
      if (value.is_number()) out.provenance[key] = value.get<double>();
      else if (value.is_string()) out.provenance[key] = value.get<std::string>();
      else out.provenance[key] = value.dump();
    }
  }
  if (j.contains("fields")) {
    for (const auto& [key, value] : j["fields"].items()) {
      out.fields[key] = get_or_throw<std::vector<double>>(value, "fields");
    }
  }
  return out;
}

std::string mesh_to_json(const TriangulatedSurface& surface, const Provenance& provenance,
                         const ScalarFields& fields) {
  json j = json::object();
  if (surface.positions()) j["vertices"] = *surface.positions();
  j["faces"] = std::vector<Triangle>(surface.faces().begin(), surface.faces().end());
  json lengths = json::array();
  for (EdgeId e = 0; e < surface.edge_count(); ++e) {
    const auto& k = surface.edge(e);
    lengths.push_back(json::array({k.v0, k.v1, surface.edge_length(e)}));
  }
  j["edge_lengths"] = std::move(lengths);
  json prov = json::object();
  for (const auto& [key, value] : provenance) {
    std::visit([&](const auto& v) { prov[key] = v; }, value);
  }
  j["provenance"] = std::move(prov);
  json f = json::object();
  for (const auto& [key, value] : fields) f[key] = value;
  j["fields"] = std::move(f);
  return j.dump(1) + "\n";
}

MeshData read_mesh(const std::string& path) {
  const auto ext = lower_extension(path);
  const auto text = read_text_file(path);
  if (ext == ".off") return {parse_off(text), {}, {}};
  if (ext == ".json") return parse_mesh_json(text);
  throw InputError("unknown mesh format: " + path);
}

void write_mesh(const std::string& path, const TriangulatedSurface& surface,
                const Provenance& provenance, const ScalarFields& fields) {
  write_text_file(path, mesh_to_json(surface, provenance, fields));
}

Collar parse_collar_json(const TriangulatedSurface& surface, const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("rings") || !j.contains("sigma")) {
    throw InputError("collar JSON needs 'rings' and 'sigma'");
  }
  auto rings = get_or_throw<std::vector<std::vector<VertexId>>>(j["rings"], "rings");
  return make_collar(surface, std::move(rings), get_or_throw<int>(j["sigma"], "sigma"));
}

Collar read_collar(const TriangulatedSurface& surface, const std::string& path) {
  return parse_collar_json(surface, read_text_file(path));
}

std::string collar_to_json(const Collar& collar) {
  json j;
  j["rings"] = collar.rings();
  j["sigma"] = collar.sigma_index();
  return j.dump() + "\n";
}

std::string region_to_json(const Region& region) {
  return json(std::vector<FaceId>(region.faces().begin(), region.faces().end())).dump();
}

std::string cycle_to_json(const Cycle& cycle) {
  return json(std::vector<EdgeId>(cycle.edges().begin(), cycle.edges().end())).dump();
}

Region parse_region_json(const std::string& text) {
  return Region(get_or_throw<std::vector<FaceId>>(parse_or_throw(text), "region"));
}

Cycle parse_cycle_json(const std::string& text) {
  return Cycle(get_or_throw<std::vector<EdgeId>>(parse_or_throw(text), "cycle"));
}

}  // namespace stretchlab
