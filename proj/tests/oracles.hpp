#pragma once

// Independent brute-force oracles used only by tests. These deliberately
// avoid the library's solver paths: intersections are decided by parameter
// sweeps and orientation predicates, hulls by all-triples containment,
// point-in-triangle by barycentric coordinates.

#include <algorithm>
#include <cmath>
#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/object_model.hpp"

namespace covplan::testing {

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

// Sweeps the ray parameter on a dense grid and reports the smallest distance
// from a swept ray point to the closed segment. A crossing drives this to
// ~|ray| / samples, so callers compare against a threshold derived from the
// sample spacing.
inline double sweep_min_distance(const Ray& ray, const Segment& seg, int samples) {
  double best = std::numeric_limits<double>::infinity();
  const Point2 d = ray.target - ray.origin;
  for (int i = 0; i <= samples; ++i) {
    const double s = static_cast<double>(i) / samples;
    best = std::min(best, point_segment_distance(ray.origin + d * s, seg.start, seg.end));
  }
  return best;
}

// Orientation-predicate segment intersection (proper crossings only; shared
// endpoints and collinear overlap are reported as no crossing, matching the
// library's treatment of grazes as a tolerance band, not a hit).
inline int orientation(Point2 p, Point2 q, Point2 r) {
  const double v = cross(q - p, r - p);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

inline bool segments_cross_properly(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

inline bool barycentric_in_triangle(Point2 p, const std::array<Point2, 3>& v, double tol) {
  const double denom = cross(v[1] - v[0], v[2] - v[0]);
  if (denom == 0.0) return false;
  const double l1 = cross(v[1] - p, v[2] - p) / denom;
  const double l2 = cross(v[2] - p, v[0] - p) / denom;
  const double l3 = cross(v[0] - p, v[1] - p) / denom;
  const double scale = std::abs(denom);
  const double slack = tol / std::sqrt(scale);  // roughly meters -> barycentric
  return l1 >= -slack && l2 >= -slack && l3 >= -slack;
}

// O(n^3) hull membership: a point is NOT a hull vertex iff it lies strictly
// inside some triangle of other points (or strictly inside a segment).
inline std::vector<Point2> hull_by_all_triples(const std::vector<Point2>& points) {
  std::vector<Point2> vertices;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool interior = false;
    for (std::size_t a = 0; a < points.size() && !interior; ++a) {
      if (a == i) continue;
      for (std::size_t b = a + 1; b < points.size() && !interior; ++b) {
        if (b == i) continue;
        for (std::size_t c = b + 1; c < points.size() && !interior; ++c) {
          if (c == i) continue;
          const std::array<Point2, 3> tri{points[a], points[b], points[c]};
          const double denom = cross(tri[1] - tri[0], tri[2] - tri[0]);
          if (std::abs(denom) < 1e-12) continue;
          const Point2 p = points[i];
          const double l1 = cross(tri[1] - p, tri[2] - p) / denom;
          const double l2 = cross(tri[2] - p, tri[0] - p) / denom;
          const double l3 = cross(tri[0] - p, tri[1] - p) / denom;
          if (l1 > 1e-12 && l2 > 1e-12 && l3 > 1e-12) interior = true;
        }
      }
    }
    // Points strictly inside a collinear span are also non-vertices.
    if (!interior) {
      for (std::size_t a = 0; a < points.size() && !interior; ++a) {
        if (a == i) continue;
        for (std::size_t b = a + 1; b < points.size() && !interior; ++b) {
          if (b == i) continue;
          const Point2 p = points[i];
          if (std::abs(cross(points[b] - points[a], p - points[a])) < 1e-12 &&
              dot(p - points[a], points[b] - p) > 1e-12) {
            interior = true;
          }
        }
      }
    }
    if (!interior) vertices.push_back(points[i]);
  }
  return vertices;
}

// Winding-free convex-polygon membership: p is inside a CCW polygon iff it
// is on the left of (or on) every edge.
inline bool inside_convex_polygon(Point2 p, const std::vector<Point2>& ccw, double tol) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Point2 a = ccw[i];
    const Point2 b = ccw[(i + 1) % ccw.size()];
    const double len = distance(a, b);
    if (cross(b - a, p - a) / len < -tol) return false;
  }
  return true;
}

}  // namespace covplan::testing
