#pragma once
#include <vector>

#include "ect/filtration.hpp"

namespace ect {

enum class DirectionScheme { UniformCircle, FibonacciSphere, Explicit };

struct DirectionSet {
  int ambient_dim = 2;
  DirectionScheme scheme = DirectionScheme::Explicit;
  std::vector<Direction> samples;
  std::vector<double> angles;  // construction angles, S^1 schemes only
};

// n evenly spaced directions on the circle, sample k at angle 2*pi*k/n,
// starting at angle 0 and turning counterclockwise.
DirectionSet uniform_circle(int n);

// Golden-angle lattice on the sphere: z_k = 1 - 2(k + 0.5)/n, azimuth
// phi_k = 2*pi*k*(1 - 1/phi). Deterministic and near-uniform.
DirectionSet fibonacci_sphere(int n);

DirectionSet explicit_set(int ambient_dim, const std::vector<Vec3>& vectors);

// Lower-bound estimate on the number of directions needed for a faithful
// discrete transform. Only the closed-form leading term is computed; the
// analysis carries an uncomputable remainder, so remainder_dropped marks the
// value as an optimistic floor rather than a guarantee.
struct DirectionBudget {
  double delta = 0.0;     // curvature-control parameter
  int b_delta = 0;        // bound on critical values within a delta-ball
  long long leading_term = 0;
  bool remainder_dropped = true;
};

// leading_term = ceil((2*b_delta + 1) * (1 + 3/delta)^2); delta > 0, b_delta >= 1.
DirectionBudget direction_budget(double delta, int b_delta);

}  // namespace ect
