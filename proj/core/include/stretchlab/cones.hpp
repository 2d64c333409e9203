#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stretchlab/surface.hpp"

namespace stretchlab {

/// Link S^p(r1) x S^q(r2) in S^{p+q+1} with r1 = sqrt(p/(p+q)),
/// r2 = sqrt(q/(p+q)).
struct ProductOfSpheres {
  int p = 1;
  int q = 1;
  double r1() const;
  double r2() const;
};

/// Triangulated two-dimensional link with |II|^2 sampled per vertex.
struct MeshedLink {
  TriangulatedSurface mesh;
  std::vector<double> second_fundamental_sq;
};

struct MinimalCone {
  int ambient_dim = 3;  // n + 1
  std::variant<ProductOfSpheres, MeshedLink> link;
  /// Never computed; set by hand together with a citation.
  bool strictly_minimising = false;
  std::optional<std::string> citation;
};

struct LinkMode {
  double mu = 0.0;
  long multiplicity = 1;
  int k = -1;  // harmonic degree on S^p (closed-form links only)
  int m = -1;  // harmonic degree on S^q
};

struct LinkSpectrum {
  std::vector<double> eigenvalues;  // ascending, repeated by multiplicity
  std::vector<LinkMode> modes;      // closed form: one entry per (k, m); numeric: one per eigenvalue
};

/// Eigenvalues of -(Delta + |II|^2) on the minimal product link:
/// k(k+p-1)/r1^2 + m(m+q-1)/r2^2 - (p+q). Returns the lowest `modes`
/// eigenvalues counted with multiplicity.
LinkSpectrum product_link_spectrum(int p, int q, int modes);

/// Multiplicity of the degree-k eigenspace of the Laplacian on S^p.
long spherical_harmonic_dimension(int p, int k);

enum class StabilityClass { StrictlyStable, Stable, Unstable };

const char* to_string(StabilityClass c);

struct RadialExponent {
  double mu = 0.0;
  double gamma_minus = 0.0;
  double gamma_plus = 0.0;
};

struct StabilityVerdict {
  int n = 0;  // link dimension + 1
  double threshold = 0.0;
  double mu1 = 0.0;
  StabilityClass cls = StabilityClass::Unstable;
  std::vector<RadialExponent> exponents;  // distinct mu_i >= threshold, ascending
};

double stability_threshold(int n);

StabilityVerdict classify_stability(const MinimalCone& cone, const LinkSpectrum& spectrum);

/// Lowest `modes` eigenvalues of stiffness - M_P against the mass matrix
/// (P1 elements, P = |II|^2 interpolated linearly).
LinkSpectrum meshed_link_spectrum(const MeshedLink& link, int modes);

}  // namespace stretchlab
