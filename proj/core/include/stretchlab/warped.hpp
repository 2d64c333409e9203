#pragma once

#include <functional>
#include <vector>

namespace stretchlab {

struct WarpedCaps {
  bool start = false;  // f -> 0 at t = 0
  bool end = false;    // f -> 0 at t = L
};

/// Warped product [0, L] x S^n with metric rho(t) dt^2 + f(t)^2 g_round.
/// The warp f and the longitudinal factor rho are sampled on the same
/// uniform grid; rho is 1 unless the interval has been stretched.
class WarpedInterval {
 public:
  using Caps = WarpedCaps;

  WarpedInterval(double length, int fibre_dim, std::vector<double> warp, Caps caps = {},
                 std::vector<double> longitudinal = {});

  /// Samples `warp` on `intervals` + 1 uniform grid points.
  static WarpedInterval sample(double length, int fibre_dim, const std::function<double(double)>& warp,
                               int intervals, Caps caps = {});

  double length() const { return length_; }
  int fibre_dim() const { return fibre_dim_; }
  int intervals() const { return static_cast<int>(warp_.size()) - 1; }
  double spacing() const { return length_ / intervals(); }
  double grid_point(int i) const { return spacing() * i; }
  const std::vector<double>& warp() const { return warp_; }
  const std::vector<double>& longitudinal() const { return longitudinal_; }
  const Caps& caps() const { return caps_; }

  /// Piecewise-linear interpolation of the samples.
  double warp_at(double t) const;
  double longitudinal_at(double t) const;

  WarpedInterval with_longitudinal(std::vector<double> longitudinal) const;
  WarpedInterval with_warp(std::vector<double> warp) const;

 private:
  double interpolate(const std::vector<double>& samples, double t) const;

  double length_;
  int fibre_dim_;
  std::vector<double> warp_;
  std::vector<double> longitudinal_;
  Caps caps_;
};

/// Area of the unit n-sphere.
double unit_sphere_area(int n);

struct WarpedMeasurements {
  double area_at_c1 = 0.0;  // |{t = c1}|
  double area_at_c2 = 0.0;  // |{t = c2}|
  double volume = 0.0;      // |{c1 <= t <= c2}|, trapezoid rule
  double distance = 0.0;    // dist({t = c1}, {t = c2}) = int sqrt(rho) dt
};

WarpedMeasurements warped_measurements(const WarpedInterval& w, double c1, double c2);

}  // namespace stretchlab
