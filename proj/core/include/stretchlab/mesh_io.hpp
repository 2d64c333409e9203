#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "stretchlab/collar.hpp"
#include "stretchlab/surface.hpp"

namespace stretchlab {

using ProvenanceValue = std::variant<double, std::string>;
using Provenance = std::map<std::string, ProvenanceValue>;
using ScalarFields = std::map<std::string, std::vector<double>>;

struct MeshData {
  TriangulatedSurface surface;
  Provenance provenance;
  ScalarFields fields;
};

/// OFF text (triangles only); lengths come from the vertex coordinates.
TriangulatedSurface parse_off(const std::string& text);

/// Native schema:
///   {"vertices": [[x,y,z],...] (optional), "faces": [[a,b,c],...],
///    "edge_lengths": [[u,v,l],...], "provenance": {...}, "fields": {...}}
/// With no edge_lengths the vertices are required and lengths are derived.
MeshData parse_mesh_json(const std::string& text);
std::string mesh_to_json(const TriangulatedSurface& surface, const Provenance& provenance = {},
                         const ScalarFields& fields = {});

/// Dispatches on the extension (.off or .json).
MeshData read_mesh(const std::string& path);
void write_mesh(const std::string& path, const TriangulatedSurface& surface,
                const Provenance& provenance = {}, const ScalarFields& fields = {});

/// {"rings": [[v,...],...], "sigma": k}
Collar parse_collar_json(const TriangulatedSurface& surface, const std::string& text);
Collar read_collar(const TriangulatedSurface& surface, const std::string& path);
std::string collar_to_json(const Collar& collar);

std::string region_to_json(const Region& region);
std::string cycle_to_json(const Cycle& cycle);
Region parse_region_json(const std::string& text);
Cycle parse_cycle_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stretchlab
