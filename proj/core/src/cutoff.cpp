#include "stretchlab/cutoff.hpp"

#include <array>
#include <cmath>

#include "stretchlab/errors.hpp"

namespace stretchlab {

namespace {

// x^3 (10 - 15x + 6x^2) and its derivatives on [0, 1].
double smootherstep(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double smootherstep_d1(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double smootherstep_d2(double x) { return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x); }

enum class Zone { Zero, Rise, One, Fall };

struct Located {
  Zone zone;
  double x;  // local coordinate in [0, 1] for Rise/Fall
};

Located locate(double eps, double t) {
  if (!(t >= 0.0 && t <= eps)) throw InputError("cutoff evaluated outside [0, eps]");
  const double w = eps / 12.0;
  if (t <= 0.25 * eps || t >= 0.75 * eps) return {Zone::Zero, 0.0};
  if (t >= eps / 3.0 && t <= 2.0 * eps / 3.0) return {Zone::One, 0.0};
  if (t < eps / 3.0) return {Zone::Rise, (t - 0.25 * eps) / w};
  return {Zone::Fall, (0.75 * eps - t) / w};
}

}  // namespace

CutoffProfile::CutoffProfile(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("epsilon must be positive");
}

double CutoffProfile::value(double t) const {
  const auto l = locate(epsilon_, t);
  switch (l.zone) {
    case Zone::Zero: return 0.0;
    case Zone::One: return 1.0;
    default: return smootherstep(l.x);
  }
}

double CutoffProfile::derivative(double t) const {
  const auto l = locate(epsilon_, t);
  const double scale = 12.0 / epsilon_;
  switch (l.zone) {
    case Zone::Rise: return scale * smootherstep_d1(l.x);
    case Zone::Fall: return -scale * smootherstep_d1(l.x);
    default: return 0.0;
  }
}

double CutoffProfile::second_derivative(double t) const {
  const auto l = locate(epsilon_, t);
  const double scale = 12.0 / epsilon_;
  switch (l.zone) {
    case Zone::Rise:
    case Zone::Fall: return scale * scale * smootherstep_d2(l.x);
    default: return 0.0;
  }
}

double CutoffProfile::snap(double t) const {
  const std::array<double, 6> marks{0.0,
                                    0.25 * epsilon_,
                                    epsilon_ / 3.0,
                                    2.0 * epsilon_ / 3.0,
                                    0.75 * epsilon_,
                                    epsilon_};
  for (double m : marks) {
    if (std::abs(t - m) <= 1e-9 * epsilon_) return m;
  }
  return t;
}

CutoffProfile make_cutoff(double epsilon) { return CutoffProfile(epsilon); }

}  // namespace stretchlab
