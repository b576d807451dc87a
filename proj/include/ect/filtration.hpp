#pragma once
#include <vector>

#include "ect/complex.hpp"

namespace ect {

// Unit vector on S^1 or S^2. Construction normalizes and rejects vectors with
// norm below 1e-12; planar directions must have z == 0.
class Direction {
 public:
  Direction(int ambient_dim, Vec3 v);
  static Direction from_angle(double theta);  // (cos theta, sin theta) on S^1

  int ambient_dim() const { return dim_; }
  const Vec3& vector() const { return v_; }

 private:
  int dim_;
  Vec3 v_;
};

struct CurveStep {
  double a;  // breakpoint position
  int chi;   // curve value on [a, next breakpoint)
};

// Right-continuous integer step function on [-R, R]: 0 before the first
// breakpoint, constant between breakpoints, equal to final_chi from the last
// breakpoint on. Stored minimally: positions strictly increasing, consecutive
// values distinct.
class EulerCurve {
 public:
  EulerCurve() = default;
  EulerCurve(std::vector<CurveStep> steps, double radius);

  const std::vector<CurveStep>& steps() const { return steps_; }
  double radius() const { return radius_; }
  bool empty() const { return steps_.empty(); }
  int final_chi() const { return steps_.empty() ? 0 : steps_.back().chi; }
  int value_at(double a) const;

 private:
  std::vector<CurveStep> steps_;
  double radius_ = 0.0;
};

// Height of a simplex in direction omega: max over its vertices of <v, omega>,
// clamped into [-R, R] (the mathematical range; clamping only trims roundoff).
double simplex_height(const Simplex& s, const EmbeddedComplex& k, const Direction& omega);

// Subcomplex of simplices with height <= a. Shares the point list of k.
EmbeddedComplex sublevel(const EmbeddedComplex& k, const Direction& omega, double a);

// Euler characteristic curve a -> chi(K_a), computed in one sorted sweep.
// Breakpoints within 1e-12 of each other are merged; runs of equal chi are
// collapsed so the representation is canonical.
EulerCurve ecc(const EmbeddedComplex& k, const Direction& omega);

}  // namespace ect
