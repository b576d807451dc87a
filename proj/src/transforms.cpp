#include "ect/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ect/parallel.hpp"

namespace ect {

namespace {

constexpr double kValueTol = 1e-9;  // vertex-value tolerance for level sets

double threshold_snap(double radius) { return 1e-9 * (1.0 + radius); }

// i-th of T values evenly spaced over [lo, hi], endpoints exact.
double grid_value(double lo, double hi, int i, int T) {
  return std::lerp(lo, hi, static_cast<double>(i) / static_cast<double>(T - 1));
}

std::vector<double> vertex_heights(const EmbeddedComplex& k, const Direction& omega) {
  std::vector<double> vh(k.points().size(), -1e300);
  for (std::int32_t v : k.referenced_vertices())
    vh[static_cast<std::size_t>(v)] =
        dot(k.points()[static_cast<std::size_t>(v)], omega.vector());
  return vh;
}

void check_direction_set(const EmbeddedComplex& k,
                         const std::vector<Direction>& directions) {
  if (directions.empty()) throw std::invalid_argument("need at least one direction");
  for (const Direction& d : directions)
    if (d.ambient_dim() != k.ambient_dim())
      throw std::invalid_argument("direction dimension does not match complex");
}

std::vector<double> planar_angles(const std::vector<Direction>& directions) {
  std::vector<double> angles;
  if (directions.empty() || directions.front().ambient_dim() != 2) return angles;
  angles.reserve(directions.size());
  for (const Direction& d : directions) {
    double a = std::atan2(d.vector().y, d.vector().x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    angles.push_back(a);
  }
  return angles;
}

}  // namespace

double EctMatrix::threshold(int i, int j) const {
  if (mode == ThresholdMode::Global) return grid_value(-radius, radius, i, num_thresholds);
  const auto& [lo, hi] = ranges[static_cast<std::size_t>(j)];
  return grid_value(lo, hi, i, num_thresholds);
}

EctMatrix ect_matrix(const EmbeddedComplex& k, const std::vector<Direction>& directions, int T,
              ThresholdMode mode, std::optional<double> radius_override) {
  if (T < 2) throw std::invalid_argument("threshold count must be at least 2");
  check_direction_set(k, directions);
  const double radius = radius_override.value_or(k.radius());
  if (radius < k.radius())
    throw std::invalid_argument("radius override below the complex radius");

  const std::size_t n = directions.size();
  EctMatrix m;
  m.directions = directions;
  m.direction_angles = planar_angles(directions);
  m.mode = mode;
  m.num_thresholds = T;
  m.radius = radius;
  m.entries.assign(static_cast<std::size_t>(T) * n, 0);
  if (mode == ThresholdMode::PerDirection) m.ranges.assign(n, {0.0, 0.0});

  const double snap = threshold_snap(radius);
  parallel_for(n, [&](std::size_t j) {
    const EulerCurve curve = ecc(k, directions[j]);
    double lo = -radius, hi = radius;
    if (mode == ThresholdMode::PerDirection) {
      lo = hi = 0.0;
      bool first = true;
      for (std::int32_t v : k.referenced_vertices()) {
        const double d =
            dot(k.points()[static_cast<std::size_t>(v)], directions[j].vector());
        lo = first ? d : std::min(lo, d);
        hi = first ? d : std::max(hi, d);
        first = false;
      }
      m.ranges[j] = {lo, hi};
    }
    for (int i = 0; i < T; ++i)
      m.entries[static_cast<std::size_t>(i) * n + j] =
          curve.value_at(grid_value(lo, hi, i, T) + snap);
  });
  return m;
}

SmoothCurve::SmoothCurve(std::vector<Knot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i - 1].t < knots_[i].t))
      throw std::invalid_argument("knot positions must be strictly increasing");
}

double SmoothCurve::value(double t) const {
  if (knots_.empty()) return 0.0;
  if (t <= knots_.front().t) return knots_.front().value;
  if (t >= knots_.back().t) return knots_.back().value;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const Knot& k) { return x < k.t; });
  const Knot& hi = *it;
  const Knot& lo = *std::prev(it);
  const double u = (t - lo.t) / (hi.t - lo.t);
  return std::lerp(lo.value, hi.value, u);
}

SmoothCurve sect_curve(const EulerCurve& curve, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!curve.empty() &&
      (curve.steps().front().a < -radius || curve.steps().back().a > radius))
    throw std::invalid_argument("curve domain exceeds the given radius");

  // Interval decomposition of [-R, R] at the breakpoints strictly inside.
  std::vector<double> xs;
  xs.push_back(-radius);
  for (const CurveStep& s : curve.steps())
    if (s.a > -radius && s.a < radius) xs.push_back(s.a);
  xs.push_back(radius);

  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    integral += static_cast<double>(curve.value_at(xs[i])) * (xs[i + 1] - xs[i]);
  const double mean = integral / (2.0 * radius);

  std::vector<Knot> knots;
  knots.reserve(xs.size());
  double acc = 0.0;
  knots.push_back({xs[0], 0.0});
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    acc += (static_cast<double>(curve.value_at(xs[i])) - mean) * (xs[i + 1] - xs[i]);
    knots.push_back({xs[i + 1], acc});
  }
  return SmoothCurve(std::move(knots));
}

SectResult sect(const EmbeddedComplex& k, const std::vector<Direction>& directions,
                std::optional<double> radius_override) {
  check_direction_set(k, directions);
  double radius = radius_override.value_or(k.radius());
  if (radius < k.radius())
    throw std::invalid_argument("radius override below the complex radius");
  if (radius == 0.0) radius = 1.0;

  SectResult out{directions, radius, {}};
  out.curves.resize(directions.size());
  parallel_for(directions.size(), [&](std::size_t j) {
    out.curves[j] = sect_curve(ecc(k, directions[j]), radius);
  });
  return out;
}

std::vector<std::vector<double>> sample_sect(const SectResult& s, int T) {
  if (T < 2) throw std::invalid_argument("threshold count must be at least 2");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    const double t = grid_value(-s.radius, s.radius, i, T);
    rows[static_cast<std::size_t>(i)].reserve(s.curves.size());
    for (const SmoothCurve& c : s.curves)
      rows[static_cast<std::size_t>(i)].push_back(c.value(t));
  }
  return rows;
}

DetectSurface detect(const std::vector<EmbeddedComplex>& series,
                     const std::vector<Direction>& directions,
                     const std::vector<double>& eval_heights) {
  if (series.empty()) throw std::invalid_argument("shape series is empty");
  if (eval_heights.empty()) throw std::invalid_argument("need evaluation heights");
  for (const EmbeddedComplex& k : series) check_direction_set(k, directions);

  double radius = 0.0;
  for (const EmbeddedComplex& k : series) radius = std::max(radius, k.radius());
  if (radius == 0.0) radius = 1.0;

  DetectSurface surface{static_cast<int>(directions.size()), radius, eval_heights, {}};
  surface.values.assign(series.size(),
                        std::vector<double>(eval_heights.size(), 0.0));
  // sect() already fans out over directions; keep the series loop serial so
  // worker pools do not nest.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const SectResult curves = sect(series[s], directions, radius);
    for (std::size_t x = 0; x < eval_heights.size(); ++x) {
      double sum = 0.0;
      for (const SmoothCurve& c : curves.curves) sum += c.value(eval_heights[x]);
      surface.values[s][x] = sum / static_cast<double>(directions.size());
    }
  }
  return surface;
}

namespace {

template <typename Keep>
EmbeddedComplex restricted(const ScalarField& field, const Direction& v, double h,
                           Keep keep_value) {
  const EmbeddedComplex& k = field.complex;
  if (field.values.size() != k.points().size())
    throw std::invalid_argument("field value count does not match points");
  if (v.ambient_dim() != k.ambient_dim())
    throw std::invalid_argument("direction dimension does not match complex");

  const std::vector<double> vh = vertex_heights(k, v);
  std::vector<Simplex> kept;
  for (const Simplex& s : k.simplices()) {
    bool ok = true;
    double height = -1e300;
    for (std::int32_t vi : s.vertices()) {
      if (!keep_value(field.values[static_cast<std::size_t>(vi)])) {
        ok = false;
        break;
      }
      height = std::max(height, vh[static_cast<std::size_t>(vi)]);
    }
    if (ok && std::clamp(height, -k.radius(), k.radius()) <= h) kept.push_back(s);
  }
  return EmbeddedComplex::from_parts_unchecked(k.ambient_dim(), k.points(),
                                               std::move(kept));
}

}  // namespace

EmbeddedComplex level_restriction(const ScalarField& field, const Direction& v, double h,
                                  double t) {
  return restricted(field, v, h,
                    [t](double val) { return std::abs(val - t) <= kValueTol; });
}

EmbeddedComplex superlevel_restriction(const ScalarField& field, const Direction& v,
                                       double h, double t) {
  return restricted(field, v, h, [t](double val) { return val >= t - kValueTol; });
}

int lect(const ScalarField& field, const Direction& v, double h, double t) {
  return euler_characteristic(level_restriction(field, v, h, t));
}

int select(const ScalarField& field, const Direction& v, double h, double t) {
  return euler_characteristic(superlevel_restriction(field, v, h, t));
}

}  // namespace ect
