#include "ect/directions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ect {

DirectionSet uniform_circle(int n) {
  if (n < 1) throw std::invalid_argument("direction count must be at least 1");
  DirectionSet set{2, DirectionScheme::UniformCircle, {}, {}};
  set.samples.reserve(n);
  set.angles.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    set.samples.push_back(Direction::from_angle(theta));
    set.angles.push_back(theta);
  }
  return set;
}

DirectionSet fibonacci_sphere(int n) {
  if (n < 1) throw std::invalid_argument("direction count must be at least 1");
  DirectionSet set{3, DirectionScheme::FibonacciSphere, {}, {}};
  set.samples.reserve(n);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const double step = 2.0 * std::numbers::pi * (1.0 - 1.0 / golden);
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = step * k;
    set.samples.push_back(Direction(3, {r * std::cos(phi), r * std::sin(phi), z}));
  }
  return set;
}

DirectionSet explicit_set(int ambient_dim, const std::vector<Vec3>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("explicit direction set is empty");
  DirectionSet set{ambient_dim, DirectionScheme::Explicit, {}, {}};
  for (const Vec3& v : vectors) set.samples.push_back(Direction(ambient_dim, v));
  return set;
}

DirectionBudget direction_budget(double delta, int b_delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (b_delta < 1) throw std::invalid_argument("b_delta must be at least 1");
  const double base = 1.0 + 3.0 / delta;
  const double value = (2.0 * b_delta + 1.0) * base * base;
  return {delta, b_delta, static_cast<long long>(std::ceil(value)), true};
}

}  // namespace ect
