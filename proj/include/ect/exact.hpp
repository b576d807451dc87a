#pragma once

namespace ect::exact {

// Sign of the cross product (b - a) x (c - a), computed exactly over the
// stored double values: +1 if a,b,c make a left turn, -1 for a right turn,
// 0 iff the three points are exactly collinear.
int orient2d(double ax, double ay, double bx, double by, double cx, double cy);

// Exact sign of ax*bx + ay*by.
int sign_dot2(double ax, double ay, double bx, double by);

// p lies on the closed segment [a, b] (endpoints included).
bool on_segment(double px, double py, double ax, double ay, double bx, double by);

// p lies strictly inside the open segment (a, b).
bool strictly_inside_segment(double px, double py, double ax, double ay, double bx, double by);

// Closed segments [a1,b1] and [a2,b2] share at least one point.
bool segments_intersect(double a1x, double a1y, double b1x, double b1y,
                        double a2x, double a2y, double b2x, double b2y);

// p lies in the closed triangle a,b,c. Degenerate (collinear) triangles are
// treated as the union of their closed edges.
bool in_closed_triangle(double px, double py, double ax, double ay, double bx, double by,
                        double cx, double cy);

}  // namespace ect::exact
