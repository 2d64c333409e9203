#include "stretchlab/warped.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stretchlab/errors.hpp"

namespace stretchlab {

WarpedInterval::WarpedInterval(double length, int fibre_dim, std::vector<double> warp, Caps caps,
                               std::vector<double> longitudinal)
    : length_(length),
      fibre_dim_(fibre_dim),
      warp_(std::move(warp)),
      longitudinal_(std::move(longitudinal)),
      caps_(caps) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) throw InputError("interval length must be positive");
  if (fibre_dim_ < 1) throw InputError("fibre dimension must be positive");
  if (warp_.size() < 2) throw InputError("warp needs at least two samples");
  if (longitudinal_.empty()) longitudinal_.assign(warp_.size(), 1.0);
  if (longitudinal_.size() != warp_.size()) throw InputError("longitudinal factor has wrong size");
  const std::size_t last = warp_.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const bool capped = (i == 0 && caps_.start) || (i == last && caps_.end);
    if (capped ? warp_[i] < 0.0 : !(warp_[i] > 0.0)) {
      throw InputError("warp must be positive on the open interval");
    }
    if (!(longitudinal_[i] > 0.0)) throw InputError("longitudinal factor must be positive");
  }
}

WarpedInterval WarpedInterval::sample(double length, int fibre_dim,
                                      const std::function<double(double)>& warp, int intervals,
                                      Caps caps) {
  if (intervals < 1) throw InputError("need at least one grid interval");
  std::vector<double> samples(intervals + 1);
  for (int i = 0; i <= intervals; ++i) samples[i] = warp(length * i / intervals);
  if (caps.start) samples.front() = 0.0;
  if (caps.end) samples.back() = 0.0;
  return WarpedInterval(length, fibre_dim, std::move(samples), caps);
}

double WarpedInterval::interpolate(const std::vector<double>& samples, double t) const {
  if (t < 0.0 || t > length_) throw InputError("parameter outside [0, L]");
  const double x = t / spacing();
  const int i = std::min(static_cast<int>(x), intervals() - 1);
  const double frac = x - i;
  return samples[i] * (1.0 - frac) + samples[i + 1] * frac;
}

double WarpedInterval::warp_at(double t) const { return interpolate(warp_, t); }
double WarpedInterval::longitudinal_at(double t) const { return interpolate(longitudinal_, t); }

WarpedInterval WarpedInterval::with_longitudinal(std::vector<double> longitudinal) const {
  return WarpedInterval(length_, fibre_dim_, warp_, caps_, std::move(longitudinal));
}

WarpedInterval WarpedInterval::with_warp(std::vector<double> warp) const {
  return WarpedInterval(length_, fibre_dim_, std::move(warp), caps_, longitudinal_);
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

WarpedMeasurements warped_measurements(const WarpedInterval& w, double c1, double c2) {
  if (!(0.0 <= c1 && c1 <= c2 && c2 <= w.length())) {
    throw InputError("need 0 <= c1 <= c2 <= L");
  }
  const int n = w.fibre_dim();
  const double omega = unit_sphere_area(n);
  WarpedMeasurements m;
  m.area_at_c1 = omega * std::pow(w.warp_at(c1), n);
  m.area_at_c2 = omega * std::pow(w.warp_at(c2), n);
  if (c1 == c2) return m;

  // Trapezoid rule on the grid, with partial end cells.
  auto volume_density = [&](double t) {
    return std::pow(w.warp_at(t), n) * std::sqrt(w.longitudinal_at(t));
  };
  auto length_density = [&](double t) { return std::sqrt(w.longitudinal_at(t)); };

  std::vector<double> nodes{c1};
  const double h = w.spacing();
  for (int i = static_cast<int>(std::floor(c1 / h)) + 1; i < w.intervals() + 1; ++i) {
    const double t = w.grid_point(i);
    if (t >= c2) break;
    if (t > c1) nodes.push_back(t);
  }
  nodes.push_back(c2);
  double vol = 0.0;
  double dist = 0.0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double a = nodes[k];
    const double b = nodes[k + 1];
    vol += 0.5 * (b - a) * (volume_density(a) + volume_density(b));
    dist += 0.5 * (b - a) * (length_density(a) + length_density(b));
  }
  m.volume = omega * vol;
  m.distance = dist;
  return m;
}

}  // namespace stretchlab
