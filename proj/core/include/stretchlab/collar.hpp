#pragma once

#include <array>
#include <vector>

#include "stretchlab/surface.hpp"

namespace stretchlab {

enum class Side { Minus, Plus };

/// Banded neighbourhood Gamma x [0, eps] realised by aligned vertex rings.
///
/// rings[j][i] sits above rings[j-1][i]; consecutive rings are joined by
/// quads (rings[j][i], rings[j][i+1], rings[j+1][i+1], rings[j+1][i]), each
/// split by one diagonal. Ring 0 is Gamma^- (the Omega side), the last ring
/// is Gamma^+, and `sigma_index` is the ring realising Sigma.
class Collar {
 public:
  struct Quad {
    std::array<FaceId, 2> faces;
    EdgeId diagonal;
  };

  int ring_count() const { return static_cast<int>(rings_.size()); }
  int band_count() const { return ring_count() - 1; }
  int fibre_size() const { return static_cast<int>(rings_.front().size()); }
  int sigma_index() const { return sigma_index_; }

  const std::vector<VertexId>& ring(int j) const { return rings_[j]; }
  const std::vector<std::vector<VertexId>>& rings() const { return rings_; }

  /// Edge (rings[j][i], rings[j][i+1]).
  EdgeId fibre_edge(int j, int i) const { return fibre_edges_[j][i]; }
  /// Edge (rings[b][i], rings[b+1][i]).
  EdgeId longitudinal_edge(int b, int i) const { return longitudinal_edges_[b][i]; }
  const Quad& quad(int b, int i) const { return quads_[b][i]; }

  /// Cumulative longitudinal distance of ring j from ring 0, in the metric
  /// the collar was built against.
  double offset(int j) const { return offsets_[j]; }
  const std::vector<double>& offsets() const { return offsets_; }

  Cycle ring_cycle(int j) const;
  Cycle sigma() const { return ring_cycle(sigma_index_); }
  /// Faces of bands [first, last).
  Region band_faces(int first_band, int last_band) const;
  /// All faces of the collar.
  Region faces() const { return band_faces(0, band_count()); }

  /// Ring indices walked from Gamma (Side::Minus: ring 0, Side::Plus: last
  /// ring) towards Sigma, inclusive of Sigma.
  std::vector<int> rings_towards_sigma(Side side) const;

  friend Collar make_collar(const TriangulatedSurface& surface,
                            std::vector<std::vector<VertexId>> rings, int sigma_index);

 private:
  std::vector<std::vector<VertexId>> rings_;
  int sigma_index_ = 0;
  std::vector<std::vector<EdgeId>> fibre_edges_;
  std::vector<std::vector<EdgeId>> longitudinal_edges_;
  std::vector<std::vector<Quad>> quads_;
  std::vector<double> offsets_;
};

/// Validates the product structure and builds the collar. Throws
/// StructuralError when rings are not aligned, quads are missing, or a band's
/// longitudinal edges differ in length.
Collar make_collar(const TriangulatedSurface& surface, std::vector<std::vector<VertexId>> rings,
                   int sigma_index);

/// Side of Sigma containing Gamma^- (Side::Minus) or Gamma^+.
Region sigma_side(const TriangulatedSurface& surface, const Collar& collar, Side side);

/// Cycle lies inside the collar and splits the collar faces into two parts,
/// one touching each boundary ring.
bool homologous_to_sigma(const TriangulatedSurface& surface, const Collar& collar,
                         const Cycle& cycle);

}  // namespace stretchlab
