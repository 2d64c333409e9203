#include "stretchlab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "stretchlab/errors.hpp"

namespace stretchlab {

double ProductOfSpheres::r1() const { return std::sqrt(static_cast<double>(p) / (p + q)); }
double ProductOfSpheres::r2() const { return std::sqrt(static_cast<double>(q) / (p + q)); }

namespace {

long binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long spherical_harmonic_dimension(int p, int k) {
  if (p < 1 || k < 0) throw InputError("harmonic dimension needs p >= 1, k >= 0");
  return binomial(k + p, p) - binomial(k + p - 2, p);
}

LinkSpectrum product_link_spectrum(int p, int q, int modes) {
  if (p < 1 || q < 1 || modes < 1) throw InputError("product link needs p, q, modes >= 1");
  const double s = p + q;
  // Each eigenvalue grows strictly in k and in m, so (k, 0) for k < modes
  // already gives `modes` values below any pair with k >= modes.
  std::vector<LinkMode> all;
  for (int k = 0; k < modes; ++k) {
    for (int m = 0; m < modes; ++m) {
      const double mu = k * (k + p - 1.0) * s / p + m * (m + q - 1.0) * s / q - s;
      all.push_back({mu, spherical_harmonic_dimension(p, k) * spherical_harmonic_dimension(q, m), k, m});
    }
  }
  std::sort(all.begin(), all.end(), [](const LinkMode& a, const LinkMode& b) {
    return std::tie(a.mu, a.k, a.m) < std::tie(b.mu, b.k, b.m);
  });
  LinkSpectrum out;
  for (const auto& mode : all) {
    if (static_cast<int>(out.eigenvalues.size()) >= modes) break;
    out.modes.push_back(mode);
    for (long r = 0; r < mode.multiplicity && static_cast<int>(out.eigenvalues.size()) < modes; ++r) {
      out.eigenvalues.push_back(mode.mu);
    }
  }
  return out;
}

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::StrictlyStable: return "strictly_stable";
    case StabilityClass::Stable: return "stable";
    default: return "unstable";
  }
}

double stability_threshold(int n) { return -static_cast<double>(n - 2) * (n - 2) / 4.0; }

StabilityVerdict classify_stability(const MinimalCone& cone, const LinkSpectrum& spectrum) {
  if (spectrum.eigenvalues.empty()) throw InputError("empty link spectrum");
  const int n = cone.ambient_dim - 1;
  if (n < 2) throw InputError("cone ambient dimension must be at least 3");
  if (const auto* prod = std::get_if<ProductOfSpheres>(&cone.link)) {
    if (prod->p + prod->q + 1 != n) throw InputError("link dimension does not match the ambient dimension");
  } else {
    if (n != 3) throw InputError("meshed links are two-dimensional; ambient dimension must be 4");
  }
  StabilityVerdict v;
  v.n = n;
  v.threshold = stability_threshold(n);
  v.mu1 = spectrum.eigenvalues.front();
  v.cls = v.mu1 > v.threshold    ? StabilityClass::StrictlyStable
          : v.mu1 == v.threshold ? StabilityClass::Stable
                                 : StabilityClass::Unstable;
  const double half = (n - 2) / 2.0;
  double last = -std::numeric_limits<double>::infinity();
  for (double mu : spectrum.eigenvalues) {
    if (mu < v.threshold || mu == last) continue;
    last = mu;
    const double root = std::sqrt(half * half + mu);
    v.exponents.push_back({mu, -half - root, -half + root});
  }
  return v;
}

LinkSpectrum meshed_link_spectrum(const MeshedLink& link, int modes) {
  const auto& mesh = link.mesh;
  const int nv = mesh.vertex_count();
  if (modes < 1 || modes >= nv) throw InputError("mode count must be in [1, vertex count)");
  if (static_cast<int>(link.second_fundamental_sq.size()) != nv) {
    throw InputError("one |II|^2 value per link vertex");
  }
  const auto& P = link.second_fundamental_sq;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> a_entries, m_entries;
  for (FaceId f = 0; f < mesh.face_count(); ++f) {
    const auto& t = mesh.face(f);
    const auto& fe = mesh.face_edges(f);
    const double area = mesh.face_area(f);
    // Edge k of the face is opposite local vertex (k + 2) % 3.
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
      const double la = mesh.edge_length(fe[k]);
      const double lb = mesh.edge_length(fe[(k + 1) % 3]);
      const double lc = mesh.edge_length(fe[(k + 2) % 3]);
      const double cot = (lb * lb + lc * lc - la * la) / (4.0 * area);
      a_entries.emplace_back(a, b, -0.5 * cot);
      a_entries.emplace_back(b, a, -0.5 * cot);
      a_entries.emplace_back(a, a, 0.5 * cot);
      a_entries.emplace_back(b, b, 0.5 * cot);
      // Exact integral of P phi_i phi_j with P linear.
      a_entries.emplace_back(a, a, -area * (P[a] / 10.0 + (P[b] + P[c]) / 30.0));
      a_entries.emplace_back(a, b, -area * ((P[a] + P[b]) / 30.0 + P[c] / 60.0));
      a_entries.emplace_back(b, a, -area * ((P[a] + P[b]) / 30.0 + P[c] / 60.0));
      m_entries.emplace_back(a, a, area / 6.0);
      m_entries.emplace_back(a, b, area / 12.0);
      m_entries.emplace_back(b, a, area / 12.0);
    }
  }
  Eigen::SparseMatrix<double> A(nv, nv), M(nv, nv);
  A.setFromTriplets(a_entries.begin(), a_entries.end());
  M.setFromTriplets(m_entries.begin(), m_entries.end());

  // A - sigma M is positive definite for sigma below -max P.
  const double sigma = -*std::max_element(P.begin(), P.end()) - 1.0;
  Eigen::SparseMatrix<double> shifted = A - sigma * M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) throw InternalError("link factorisation failed");

  const int block = std::min(nv, modes + std::max(4, modes));
  std::mt19937_64 rng(0x5eed);
  Eigen::MatrixXd X(nv, block);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < block; ++j) X(i, j) = static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5;
  }
  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(block);
  Eigen::VectorXd previous = Eigen::VectorXd::Constant(block, std::numeric_limits<double>::infinity());
  for (int iter = 0; iter < 2000; ++iter) {
    Eigen::MatrixXd Y = solver.solve(M * X);
    // Rayleigh-Ritz on span(Y).
    const Eigen::MatrixXd Ay = Y.transpose() * (A * Y);
    const Eigen::MatrixXd My = Y.transpose() * (M * Y);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> small(0.5 * (Ay + Ay.transpose()),
                                                                   0.5 * (My + My.transpose()));
    if (small.info() != Eigen::Success) throw InternalError("Rayleigh-Ritz step failed");
    ritz = small.eigenvalues();
    X = Y * small.eigenvectors();
    double change = 0.0;
    for (int j = 0; j < modes; ++j) {
      change = std::max(change, std::abs(ritz(j) - previous(j)) / std::max(1.0, std::abs(ritz(j))));
    }
    previous = ritz;
    if (change < 1e-13) break;
  }
  LinkSpectrum out;
  for (int j = 0; j < modes; ++j) {
    out.eigenvalues.push_back(ritz(j));
    out.modes.push_back({ritz(j), 1, -1, -1});
  }
  return out;
}

}  // namespace stretchlab
