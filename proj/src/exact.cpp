#include "ect/exact.hpp"

#include <algorithm>
#include <cmath>

// Exact sign evaluation of small polynomial expressions in doubles using
// floating-point expansions: every value is kept as an unevaluated sum of
// nonoverlapping doubles, so no information is ever rounded away. two_sum and
// two_prod are the classic error-free transformations; two_prod leans on fma.

namespace ect::exact {
namespace {

struct Pair {
  double hi, lo;
};

inline Pair two_sum(double a, double b) {
  double s = a + b;
  double bv = s - a;
  double av = s - bv;
  return {s, (a - av) + (b - bv)};
}

inline Pair two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Running expansion, nonoverlapping, ordered by increasing magnitude.
// Capacity covers a sum of up to 16 IEEE doubles.
struct Expansion {
  double e[16];
  int n = 0;

  // Shewchuk's GROW-EXPANSION: add one double, keeping nonoverlap.
  void add(double b) {
    double q = b;
    int m = 0;
    for (int i = 0; i < n; ++i) {
      Pair s = two_sum(q, e[i]);
      e[m++] = s.lo;
      q = s.hi;
    }
    e[m++] = q;
    n = m;
  }

  // Sign of the represented value: the largest-magnitude component decides.
  int sign() const {
    for (int i = n - 1; i >= 0; --i) {
      if (e[i] > 0.0) return 1;
      if (e[i] < 0.0) return -1;
    }
    return 0;
  }
};

inline int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Exact sign of p*q + r*s.
int sign_prod_sum2(double p, double q, double r, double s) {
  Pair a = two_prod(p, q);
  Pair b = two_prod(r, s);
  Expansion e;
  e.add(a.lo);
  e.add(b.lo);
  e.add(a.hi);
  e.add(b.hi);
  return e.sign();
}

}  // namespace

int orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
  // Fast path with a conservative error bound (Shewchuk's A-stage filter).
  const double detleft = (ax - cx) * (by - cy);
  const double detright = (ay - cy) * (bx - cx);
  const double det = detleft - detright;
  const double detsum = std::abs(detleft) + std::abs(detright);
  constexpr double errbound = 3.3306690738754716e-16;  // (3 + 16 eps) * eps
  if (std::abs(det) > errbound * detsum) return sign_of(det);

  // Exact fallback: expand det = ax*by - ax*cy - cx*by - ay*bx + ay*cx + cy*bx
  // (the cx*cy terms cancel) into error-free product pairs and sum exactly.
  const Pair terms[6] = {two_prod(ax, by),  two_prod(-ax, cy), two_prod(-cx, by),
                         two_prod(-ay, bx), two_prod(ay, cx),  two_prod(cy, bx)};
  Expansion e;
  for (const Pair& t : terms) e.add(t.lo);
  for (const Pair& t : terms) e.add(t.hi);
  return e.sign();
}

int sign_dot2(double ax, double ay, double bx, double by) {
  return sign_prod_sum2(ax, bx, ay, by);
}

bool on_segment(double px, double py, double ax, double ay, double bx, double by) {
  if (orient2d(ax, ay, bx, by, px, py) != 0) return false;
  // Collinear: betweenness reduces to exact coordinate comparisons.
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) &&
         std::min(ay, by) <= py && py <= std::max(ay, by);
}

bool strictly_inside_segment(double px, double py, double ax, double ay, double bx,
                             double by) {
  if (!on_segment(px, py, ax, ay, bx, by)) return false;
  return !(px == ax && py == ay) && !(px == bx && py == by);
}

bool segments_intersect(double a1x, double a1y, double b1x, double b1y, double a2x,
                        double a2y, double b2x, double b2y) {
  const int d1 = orient2d(a2x, a2y, b2x, b2y, a1x, a1y);
  const int d2 = orient2d(a2x, a2y, b2x, b2y, b1x, b1y);
  const int d3 = orient2d(a1x, a1y, b1x, b1y, a2x, a2y);
  const int d4 = orient2d(a1x, a1y, b1x, b1y, b2x, b2y);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a1x, a1y, a2x, a2y, b2x, b2y)) return true;
  if (d2 == 0 && on_segment(b1x, b1y, a2x, a2y, b2x, b2y)) return true;
  if (d3 == 0 && on_segment(a2x, a2y, a1x, a1y, b1x, b1y)) return true;
  if (d4 == 0 && on_segment(b2x, b2y, a1x, a1y, b1x, b1y)) return true;
  return false;
}

bool in_closed_triangle(double px, double py, double ax, double ay, double bx, double by,
                        double cx, double cy) {
  const int o = orient2d(ax, ay, bx, by, cx, cy);
  if (o == 0) {
    return on_segment(px, py, ax, ay, bx, by) || on_segment(px, py, bx, by, cx, cy) ||
           on_segment(px, py, cx, cy, ax, ay);
  }
  const int s1 = orient2d(ax, ay, bx, by, px, py);
  const int s2 = orient2d(bx, by, cx, cy, px, py);
  const int s3 = orient2d(cx, cy, ax, ay, px, py);
  return (s1 == 0 || s1 == o) && (s2 == 0 || s2 == o) && (s3 == 0 || s3 == o);
}

}  // namespace ect::exact
