#include "ect/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ect {

namespace {
constexpr double kMergeTol = 1e-12;  // adjacent breakpoints closer than this collapse
}

Direction::Direction(int ambient_dim, Vec3 v) : dim_(ambient_dim), v_(v) {
  if (ambient_dim != 2 && ambient_dim != 3)
    throw std::invalid_argument("direction dimension must be 2 or 3");
  if (ambient_dim == 2 && v.z != 0.0)
    throw std::invalid_argument("planar direction requires z == 0");
  const double n = norm(v);
  if (!(n > 1e-12)) throw std::invalid_argument("direction vector too close to zero");
  v_ = (1.0 / n) * v;
}

Direction Direction::from_angle(double theta) {
  return Direction(2, {std::cos(theta), std::sin(theta), 0.0});
}

EulerCurve::EulerCurve(std::vector<CurveStep> steps, double radius)
    : steps_(std::move(steps)), radius_(radius) {
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    if (!(steps_[i - 1].a < steps_[i].a))
      throw std::invalid_argument("curve breakpoints must be strictly increasing");
    if (steps_[i - 1].chi == steps_[i].chi)
      throw std::invalid_argument("curve has redundant equal-value breakpoints");
  }
}

int EulerCurve::value_at(double a) const {
  // Last breakpoint with position <= a, else the leading zero segment.
  auto it = std::upper_bound(steps_.begin(), steps_.end(), a,
                             [](double x, const CurveStep& s) { return x < s.a; });
  if (it == steps_.begin()) return 0;
  return std::prev(it)->chi;
}

double simplex_height(const Simplex& s, const EmbeddedComplex& k, const Direction& omega) {
  if (omega.ambient_dim() != k.ambient_dim())
    throw std::invalid_argument("direction dimension does not match complex");
  double h = -1e300;
  for (std::int32_t v : s.vertices())
    h = std::max(h, dot(k.points()[static_cast<std::size_t>(v)], omega.vector()));
  return std::clamp(h, -k.radius(), k.radius());
}

EmbeddedComplex sublevel(const EmbeddedComplex& k, const Direction& omega, double a) {
  // Vertex heights first; a simplex height is the max over its vertices.
  std::vector<double> vh(k.points().size(), -1e300);
  for (std::int32_t v : k.referenced_vertices())
    vh[static_cast<std::size_t>(v)] =
        std::clamp(dot(k.points()[static_cast<std::size_t>(v)], omega.vector()),
                   -k.radius(), k.radius());

  std::vector<Simplex> kept;
  for (const Simplex& s : k.simplices()) {
    double h = -1e300;
    for (std::int32_t v : s.vertices()) h = std::max(h, vh[static_cast<std::size_t>(v)]);
    if (h <= a) kept.push_back(s);
  }
  return EmbeddedComplex::from_parts_unchecked(k.ambient_dim(), k.points(),
                                               std::move(kept));
}

EulerCurve ecc(const EmbeddedComplex& k, const Direction& omega) {
  if (omega.ambient_dim() != k.ambient_dim())
    throw std::invalid_argument("direction dimension does not match complex");
  if (k.empty()) return {};

  std::vector<double> vh(k.points().size(), -1e300);
  for (std::int32_t v : k.referenced_vertices())
    vh[static_cast<std::size_t>(v)] =
        dot(k.points()[static_cast<std::size_t>(v)], omega.vector());

  // (height, chi contribution) per simplex.
  struct Event {
    double h;
    int delta;
  };
  std::vector<Event> events;
  events.reserve(k.simplices().size());
  for (const Simplex& s : k.simplices()) {
    double h = -1e300;
    for (std::int32_t v : s.vertices()) h = std::max(h, vh[static_cast<std::size_t>(v)]);
    h = std::clamp(h, -k.radius(), k.radius());
    events.push_back({h, s.dimension() % 2 == 0 ? 1 : -1});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.h < b.h; });

  std::vector<CurveStep> steps;
  int chi = 0;
  std::size_t i = 0;
  while (i < events.size()) {
    const double at = events[i].h;
    int delta = 0;
    // Chain-merge events whose adjacent gaps stay below the tolerance.
    do {
      delta += events[i].delta;
      ++i;
    } while (i < events.size() && events[i].h - events[i - 1].h <= kMergeTol);
    chi += delta;
    if (steps.empty() ? chi != 0 : chi != steps.back().chi) steps.push_back({at, chi});
  }
  return EulerCurve(std::move(steps), k.radius());
}

}  // namespace ect
