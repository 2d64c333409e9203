#pragma once

namespace stretchlab {

/// C^2 cutoff on [0, eps]: 0 on [0, eps/4] and [3eps/4, eps], 1 on
/// [eps/3, 2eps/3], quintic smootherstep on the two transitions.
class CutoffProfile {
 public:
  explicit CutoffProfile(double epsilon);

  double epsilon() const { return epsilon_; }
  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  /// Points within 1e-9 eps of one of eps/4, eps/3, 2eps/3, 3eps/4, eps are
  /// moved onto it, so mesh rings placed there hit the plateau values
  /// exactly.
  double snap(double t) const;

 private:
  double epsilon_;
};

CutoffProfile make_cutoff(double epsilon);

}  // namespace stretchlab
