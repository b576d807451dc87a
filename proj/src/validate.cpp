#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ect/complex.hpp"
#include "ect/exact.hpp"

// validate() never throws: it reports. Structural problems (closure, indices,
// duplicates, coordinate sanity) are errors; geometric problems (degenerate
// simplices, improper pairwise intersections) are warnings. The pairwise
// phase only examines maximal simplices: with face closure intact, two
// simplices intersect properly exactly when the maximal simplices carrying
// them do, so one offending pair yields one warning.

namespace ect {
namespace {

constexpr double kGeomTol = 1e-9;  // absolute tolerance for the R^3 checks

std::string simplex_str(const Simplex& s) {
  std::string out = "{";
  for (int i = 0; i < s.vertex_count(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.vertex(i));
  }
  return out + "}";
}

// --- double-precision closest-point helpers for the R^3 warnings ---

double point_segment_dist2(Vec3 p, Vec3 a, Vec3 b) {
  const Vec3 ab = b - a;
  const double len2 = norm_squared(ab);
  if (len2 == 0.0) return norm_squared(p - a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return norm_squared(p - (a + t * ab));
}

double point_triangle_dist2(Vec3 p, Vec3 a, Vec3 b, Vec3 c) {
  // Ericson-style region classification via barycentric gradients.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) return norm_squared(p - a);

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0.0 && d4 <= d3) return norm_squared(p - b);

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double denom = d1 - d3;
    const double t = denom != 0.0 ? d1 / denom : 0.0;
    return norm_squared(p - (a + t * ab));
  }

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0.0 && d5 <= d6) return norm_squared(p - c);

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double denom = d2 - d6;
    const double t = denom != 0.0 ? d2 / denom : 0.0;
    return norm_squared(p - (a + t * ac));
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double denom = (d4 - d3) + (d5 - d6);
    const double t = denom != 0.0 ? (d4 - d3) / denom : 0.0;
    return norm_squared(p - (b + t * (c - b)));
  }

  const double denom = va + vb + vc;
  if (denom == 0.0) {  // degenerate triangle: fall back to its edges
    return std::min({point_segment_dist2(p, a, b), point_segment_dist2(p, b, c),
                     point_segment_dist2(p, c, a)});
  }
  const double v = vb / denom, w = vc / denom;
  return norm_squared(p - (a + v * ab + w * ac));
}

double segment_segment_dist2(Vec3 p1, Vec3 q1, Vec3 p2, Vec3 q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = norm_squared(d1), e = norm_squared(d2), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  if (a == 0.0 && e == 0.0) {
    return norm_squared(r);
  } else if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom != 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm_squared((p1 + s * d1) - (p2 + t * d2));
}

double segment_triangle_dist2(Vec3 p, Vec3 q, Vec3 a, Vec3 b, Vec3 c) {
  // Transversal crossing through the interior counts as distance zero.
  const Vec3 n = cross(b - a, c - a);
  const double dp = dot(n, p - a), dq = dot(n, q - a);
  if ((dp > 0.0) != (dq > 0.0) && dp != dq) {
    const double t = dp / (dp - dq);
    const Vec3 x = p + t * (q - p);
    if (point_triangle_dist2(x, a, b, c) <= kGeomTol * kGeomTol) return 0.0;
  }
  double best = std::min(point_triangle_dist2(p, a, b, c), point_triangle_dist2(q, a, b, c));
  best = std::min(best, segment_segment_dist2(p, q, a, b));
  best = std::min(best, segment_segment_dist2(p, q, b, c));
  best = std::min(best, segment_segment_dist2(p, q, c, a));
  return best;
}

// --- pairwise improper-intersection test ---

struct MaximalInfo {
  const Simplex* s;
  double min[3], max[3];
};

struct PairChecker {
  const EmbeddedComplex& k;

  Vec3 pt(std::int32_t v) const { return k.points()[static_cast<std::size_t>(v)]; }

  bool point_in_simplex_2d(Vec3 p, const Simplex& s) const {
    const auto vs = s.vertices();
    switch (s.dimension()) {
      case 0: {
        const Vec3 a = pt(vs[0]);
        return p.x == a.x && p.y == a.y;
      }
      case 1: {
        const Vec3 a = pt(vs[0]), b = pt(vs[1]);
        return exact::on_segment(p.x, p.y, a.x, a.y, b.x, b.y);
      }
      default: {
        const Vec3 a = pt(vs[0]), b = pt(vs[1]), c = pt(vs[2]);
        return exact::in_closed_triangle(p.x, p.y, a.x, a.y, b.x, b.y, c.x, c.y);
      }
    }
  }

  bool point_in_simplex_3d(Vec3 p, const Simplex& s) const {
    const auto vs = s.vertices();
    const double tol2 = kGeomTol * kGeomTol;
    switch (s.dimension()) {
      case 0:
        return norm_squared(p - pt(vs[0])) <= tol2;
      case 1:
        return point_segment_dist2(p, pt(vs[0]), pt(vs[1])) <= tol2;
      case 2:
        return point_triangle_dist2(p, pt(vs[0]), pt(vs[1]), pt(vs[2])) <= tol2;
      default: {
        const Vec3 a = pt(vs[0]), b = pt(vs[1]), c = pt(vs[2]), d = pt(vs[3]);
        // Inside when p sits on the same side of each face as the opposite vertex.
        const Vec3 face[4][3] = {{a, b, c}, {a, b, d}, {a, c, d}, {b, c, d}};
        const Vec3 opp[4] = {d, c, b, a};
        bool inside = true;
        for (int i = 0; i < 4 && inside; ++i) {
          const Vec3 n = cross(face[i][1] - face[i][0], face[i][2] - face[i][0]);
          const double sp = dot(n, p - face[i][0]);
          const double so = dot(n, opp[i] - face[i][0]);
          if (sp * so < 0.0 && std::abs(sp) > kGeomTol * norm(n)) inside = false;
        }
        if (inside) return true;
        for (int i = 0; i < 4; ++i)
          if (point_triangle_dist2(p, face[i][0], face[i][1], face[i][2]) <= tol2)
            return true;
        return false;
      }
    }
  }

  // Vertex pairs of a simplex, i.e. its edges when dim >= 1.
  static int edge_list(const Simplex& s, std::int32_t out[6][2]) {
    const int n = s.vertex_count();
    if (n < 2) return 0;
    int m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        out[m][0] = s.vertex(i);
        out[m][1] = s.vertex(j);
        ++m;
      }
    return m;
  }

  static int triangle_list(const Simplex& s, std::int32_t out[4][3]) {
    const int n = s.vertex_count();
    if (n < 3) return 0;
    int m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
          out[m][0] = s.vertex(i);
          out[m][1] = s.vertex(j);
          out[m][2] = s.vertex(l);
          ++m;
        }
    return m;
  }

  bool improper_2d(const Simplex& a, const Simplex& b) const {
    // Any vertex of one simplex inside the other, beyond the shared face.
    for (std::int32_t v : a.vertices())
      if (!b.has_vertex(v) && point_in_simplex_2d(pt(v), b)) return true;
    for (std::int32_t v : b.vertices())
      if (!a.has_vertex(v) && point_in_simplex_2d(pt(v), a)) return true;

    // Edge pairs with disjoint index sets may not touch at all.
    std::int32_t ea[6][2], eb[6][2];
    const int na = edge_list(a, ea), nb = edge_list(b, eb);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) {
        if (ea[i][0] == eb[j][0] || ea[i][0] == eb[j][1] || ea[i][1] == eb[j][0] ||
            ea[i][1] == eb[j][1])
          continue;
        const Vec3 p1 = pt(ea[i][0]), q1 = pt(ea[i][1]);
        const Vec3 p2 = pt(eb[j][0]), q2 = pt(eb[j][1]);
        if (exact::segments_intersect(p1.x, p1.y, q1.x, q1.y, p2.x, p2.y, q2.x, q2.y))
          return true;
      }
    return false;
  }

  bool improper_3d(const Simplex& a, const Simplex& b) const {
    const double tol2 = kGeomTol * kGeomTol;
    for (std::int32_t v : a.vertices())
      if (!b.has_vertex(v) && point_in_simplex_3d(pt(v), b)) return true;
    for (std::int32_t v : b.vertices())
      if (!a.has_vertex(v) && point_in_simplex_3d(pt(v), a)) return true;

    std::int32_t ea[6][2], eb[6][2];
    const int na = edge_list(a, ea), nb = edge_list(b, eb);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) {
        if (ea[i][0] == eb[j][0] || ea[i][0] == eb[j][1] || ea[i][1] == eb[j][0] ||
            ea[i][1] == eb[j][1])
          continue;
        if (segment_segment_dist2(pt(ea[i][0]), pt(ea[i][1]), pt(eb[j][0]), pt(eb[j][1])) <=
            tol2)
          return true;
      }

    // Edges piercing triangle interiors (covers triangle/triangle crossings).
    std::int32_t ta[4][3], tb[4][3];
    const int ma = triangle_list(a, ta), mb = triangle_list(b, tb);
    auto edge_hits_triangle = [&](const std::int32_t e[2], const std::int32_t t[3]) {
      if (e[0] == t[0] || e[0] == t[1] || e[0] == t[2] || e[1] == t[0] || e[1] == t[1] ||
          e[1] == t[2])
        return false;
      return segment_triangle_dist2(pt(e[0]), pt(e[1]), pt(t[0]), pt(t[1]), pt(t[2])) <=
             tol2;
    };
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < mb; ++j)
        if (edge_hits_triangle(ea[i], tb[j])) return true;
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < ma; ++j)
        if (edge_hits_triangle(eb[i], ta[j])) return true;
    return false;
  }

  bool improper(const Simplex& a, const Simplex& b) const {
    return k.ambient_dim() == 2 ? improper_2d(a, b) : improper_3d(a, b);
  }
};

void check_degenerate(const EmbeddedComplex& k, const Simplex& s,
                      std::vector<Violation>& out) {
  const auto& pts = k.points();
  auto p = [&](int i) { return pts[static_cast<std::size_t>(s.vertex(i))]; };
  bool degenerate = false;
  switch (s.dimension()) {
    case 1:
      degenerate = p(0) == p(1);
      break;
    case 2:
      if (k.ambient_dim() == 2) {
        degenerate = exact::orient2d(p(0).x, p(0).y, p(1).x, p(1).y, p(2).x, p(2).y) == 0;
      } else {
        const Vec3 n = cross(p(1) - p(0), p(2) - p(0));
        degenerate = norm(n) <= 1e-12 * norm(p(1) - p(0)) * norm(p(2) - p(0));
      }
      break;
    case 3: {
      const double vol = dot(cross(p(1) - p(0), p(2) - p(0)), p(3) - p(0));
      const double scale = norm(p(1) - p(0)) * norm(p(2) - p(0)) * norm(p(3) - p(0));
      degenerate = std::abs(vol) <= 1e-12 * scale;
      break;
    }
    default:
      break;
  }
  if (degenerate)
    out.push_back({Severity::Warning,
                   "degenerate simplex " + simplex_str(s) + " (affinely dependent vertices)"});
}

}  // namespace

std::vector<Violation> validate(const EmbeddedComplex& k) {
  std::vector<Violation> out;
  const auto npoints = static_cast<std::int32_t>(k.points().size());

  for (std::size_t i = 0; i < k.points().size(); ++i) {
    const Vec3& p = k.points()[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      out.push_back({Severity::Error, "nonfinite coordinate at point " + std::to_string(i)});
    else if (k.ambient_dim() == 2 && p.z != 0.0)
      out.push_back({Severity::Error, "nonzero z at point " + std::to_string(i) +
                                          " in a planar complex"});
  }

  // Index validity; simplices failing it are excluded from later phases.
  std::vector<Simplex> valid;
  valid.reserve(k.simplices().size());
  for (const Simplex& s : k.simplices()) {
    bool ok = true;
    for (std::int32_t v : s.vertices())
      if (v >= npoints) {
        out.push_back({Severity::Error, "vertex index " + std::to_string(v) +
                                            " in simplex " + simplex_str(s) +
                                            " out of range"});
        ok = false;
        break;
      }
    if (ok && s.dimension() > k.ambient_dim()) {
      out.push_back({Severity::Error, "simplex " + simplex_str(s) +
                                          " has dimension above the ambient dimension"});
      ok = false;
    }
    if (ok) valid.push_back(s);
  }

  // Duplicates (simplices() is sorted).
  for (std::size_t i = 1; i < valid.size(); ++i)
    if (valid[i] == valid[i - 1]) {
      out.push_back({Severity::Error, "duplicate simplex " + simplex_str(valid[i])});
      while (i + 1 < valid.size() && valid[i + 1] == valid[i]) ++i;
    }

  // Face closure.
  std::unordered_set<Simplex, SimplexHash> present(valid.begin(), valid.end());
  std::unordered_set<Simplex, SimplexHash> reported;
  for (const Simplex& s : valid) {
    const unsigned full = (1u << s.vertex_count()) - 1u;
    for (unsigned mask = 1; mask < full; ++mask) {
      const Simplex f = s.face(mask);
      if (!present.count(f) && reported.insert(f).second)
        out.push_back({Severity::Error,
                       "missing face " + simplex_str(f) + " of " + simplex_str(s)});
    }
  }

  for (const Simplex& s : valid) check_degenerate(k, s, out);

  // Maximal simplices: not a proper face of anything present.
  std::unordered_set<Simplex, SimplexHash> nonmaximal;
  for (const Simplex& s : valid) {
    const unsigned full = (1u << s.vertex_count()) - 1u;
    for (unsigned mask = 1; mask < full; ++mask) nonmaximal.insert(s.face(mask));
  }

  std::vector<MaximalInfo> maximal;
  for (const Simplex& s : valid) {
    if (nonmaximal.count(s)) continue;
    MaximalInfo info{&s, {0, 0, 0}, {0, 0, 0}};
    for (int c = 0; c < 3; ++c) {
      info.min[c] = 1e300;
      info.max[c] = -1e300;
    }
    for (std::int32_t v : s.vertices()) {
      const Vec3 p = k.points()[static_cast<std::size_t>(v)];
      const double xyz[3] = {p.x, p.y, p.z};
      for (int c = 0; c < 3; ++c) {
        info.min[c] = std::min(info.min[c], xyz[c]);
        info.max[c] = std::max(info.max[c], xyz[c]);
      }
    }
    maximal.push_back(info);
  }

  // Sweep over x with a slack absorbing the R^3 tolerance.
  std::sort(maximal.begin(), maximal.end(),
            [](const MaximalInfo& a, const MaximalInfo& b) { return a.min[0] < b.min[0]; });
  const PairChecker checker{k};
  const double slack = k.ambient_dim() == 3 ? kGeomTol : 0.0;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (std::size_t j = i + 1; j < maximal.size(); ++j) {
      if (maximal[j].min[0] > maximal[i].max[0] + slack) break;
      bool overlap = true;
      for (int c = 1; c < 3 && overlap; ++c)
        overlap = maximal[j].min[c] <= maximal[i].max[c] + slack &&
                  maximal[i].min[c] <= maximal[j].max[c] + slack;
      if (!overlap) continue;
      const Simplex& a = *maximal[i].s;
      const Simplex& b = *maximal[j].s;
      if (a == b) continue;
      if (checker.improper(a, b))
        out.push_back({Severity::Warning, "improper intersection between simplices " +
                                              simplex_str(a) + " and " + simplex_str(b)});
    }
  }

  return out;
}

}  // namespace ect
