#include "ect/align.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ect {

namespace detail {

void symmetric_eigen(const Mat3& m, int n, std::array<double, 3>& values, Mat3& vectors) {
  // Cyclic Jacobi on a copy; V accumulates the rotations so rows of V^T are
  // eigenvectors. Plenty for 2x2/3x3 covariance matrices.
  double a[3][3];
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = (i < n && j < n) ? m.m[3 * i + j] : (i == j);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < 3; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (int i = 0; i < 3; ++i) {
          const double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
        for (int i = 0; i < 3; ++i) {
          const double vip = v[i][p], viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
    }
  }

  // Sort by descending eigenvalue within the active block.
  int order[3] = {0, 1, 2};
  std::sort(order, order + n, [&](int x, int y) { return a[x][x] > a[y][y]; });
  for (int i = 0; i < 3; ++i) {
    const int src = i < n ? order[i] : i;
    values[static_cast<std::size_t>(i)] = a[src][src];
    for (int j = 0; j < 3; ++j) vectors.m[3 * i + j] = v[j][src];
  }
}

}  // namespace detail

std::pair<EmbeddedComplex, AlignmentReport> center(const EmbeddedComplex& k) {
  if (k.empty()) throw std::invalid_argument("cannot center an empty complex");
  const Vec3 shift = -vertex_centroid(k);
  AlignmentReport report;
  report.translation = shift;
  return {translated(k, shift), report};
}

std::pair<EmbeddedComplex, AlignmentReport> pca_align(const EmbeddedComplex& k) {
  auto [centered, report] = center(k);
  const int n = centered.ambient_dim();
  const auto& refs = centered.referenced_vertices();
  const double count = static_cast<double>(refs.size());

  Mat3 cov{};
  cov.m.fill(0.0);
  for (std::int32_t vi : refs) {
    const Vec3 p = centered.points()[static_cast<std::size_t>(vi)];
    const double c[3] = {p.x, p.y, p.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cov.m[3 * i + j] += c[i] * c[j] / count;
  }

  std::array<double, 3> eigenvalues{};
  Mat3 axes{};
  detail::symmetric_eigen(cov, n, eigenvalues, axes);

  for (int i = 0; i + 1 < n; ++i)
    if (std::abs(eigenvalues[static_cast<std::size_t>(i)] -
                 eigenvalues[static_cast<std::size_t>(i + 1)]) < 1e-6)
      report.degenerate_eigenvalues = true;

  // Deterministic sign: largest-magnitude component positive first, then the
  // skew rule on the vertex coordinates along each axis.
  for (int i = 0; i < n; ++i) {
    double* row = &axes.m[3 * i];
    double best = row[0];
    for (int j = 1; j < 3; ++j)
      if (std::abs(row[j]) > std::abs(best)) best = row[j];
    if (best < 0.0)
      for (int j = 0; j < 3; ++j) row[j] = -row[j];

    double skew = 0.0;
    for (std::int32_t vi : refs) {
      const Vec3 p = centered.points()[static_cast<std::size_t>(vi)];
      const double proj = row[0] * p.x + row[1] * p.y + row[2] * p.z;
      skew += proj * proj * proj;
    }
    skew /= count;
    if (skew < -1e-9) {
      for (int j = 0; j < 3; ++j) row[j] = -row[j];
      report.axis_signs[static_cast<std::size_t>(i)] = -1;
    } else if (skew <= 1e-9) {
      report.ambiguous_axes.push_back(i);
    }
  }

  // Proper rotation only.
  const double d = n == 2 ? axes.m[0] * axes.m[4] - axes.m[1] * axes.m[3] : axes.det();
  if (d < 0.0) {
    double* last = &axes.m[3 * (n - 1)];
    for (int j = 0; j < 3; ++j) last[j] = -last[j];
    report.axis_signs[static_cast<std::size_t>(n - 1)] *= -1;
  }

  report.rotation = axes;
  std::vector<Vec3> rotated;
  rotated.reserve(centered.points().size());
  for (const Vec3& p : centered.points()) {
    Vec3 q = axes.apply(p);
    if (n == 2) q.z = 0.0;
    rotated.push_back(q);
  }
  return {with_coordinates(centered, std::move(rotated)), report};
}

namespace {

bool same_directions(const std::vector<Direction>& a, const std::vector<Direction>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (norm(a[i].vector() - b[i].vector()) > 1e-12) return false;
  return true;
}

}  // namespace

double ect_distance(const EctMatrix& a, const EctMatrix& b, MatrixNorm norm) {
  if (a.mode != b.mode) throw std::invalid_argument("threshold mode mismatch");
  if (a.num_thresholds != b.num_thresholds)
    throw std::invalid_argument("threshold count mismatch");
  if (!same_directions(a.directions, b.directions))
    throw std::invalid_argument("direction set mismatch");
  if (a.mode == ThresholdMode::Global && std::abs(a.radius - b.radius) > 1e-12)
    throw std::invalid_argument("radius mismatch");

  double acc = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const double d = std::abs(static_cast<double>(a.entries[i]) - b.entries[i]);
    acc = norm == MatrixNorm::Max ? std::max(acc, d) : acc + d * d;
  }
  if (norm == MatrixNorm::Max) return acc;
  return std::sqrt(acc / static_cast<double>(a.entries.size()));
}

double sect_distance(const SectResult& a, const SectResult& b) {
  if (!same_directions(a.directions, b.directions))
    throw std::invalid_argument("direction set mismatch");
  if (std::abs(a.radius - b.radius) > 1e-12) throw std::invalid_argument("radius mismatch");

  double total = 0.0;
  for (std::size_t j = 0; j < a.curves.size(); ++j) {
    const SmoothCurve& ca = a.curves[j];
    const SmoothCurve& cb = b.curves[j];

    std::vector<double> ts;
    for (const Knot& k : ca.knots()) ts.push_back(k.t);
    for (const Knot& k : cb.knots()) ts.push_back(k.t);
    ts.push_back(-a.radius);
    ts.push_back(a.radius);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    // Both curves are linear between merged knots, so the squared difference
    // is quadratic: integrate with the h/3 * (d0^2 + d0*d1 + d1^2) rule.
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      const double d0 = ca.value(ts[i]) - cb.value(ts[i]);
      const double d1 = ca.value(ts[i + 1]) - cb.value(ts[i + 1]);
      integral += (ts[i + 1] - ts[i]) / 3.0 * (d0 * d0 + d0 * d1 + d1 * d1);
    }
    total += integral;
  }
  return std::sqrt(total / static_cast<double>(a.curves.size()));
}

}  // namespace ect
