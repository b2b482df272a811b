#include "covplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covplan {

double norm(Point2 a) { return std::hypot(a.x, a.y); }

double distance(Point2 a, Point2 b) { return norm(a - b); }

FovConfig make_fov_config(double apex_angle, double range) {
  constexpr double kPi = 3.14159265358979323846;
  if (!(apex_angle > 0.0) || !(apex_angle < kPi)) {
    throw std::domain_error("fov apex angle must be in (0, pi)");
  }
  if (!(range > 0.0)) {
    throw std::domain_error("fov range must be positive");
  }
  FovConfig cfg;
  cfg.apex_angle = apex_angle;
  cfg.range = range;
  cfg.side_len = range / std::cos(apex_angle / 2.0);
  cfg.base_len = 2.0 * cfg.side_len * std::sin(apex_angle / 2.0);
  cfg.base_vertices = {Point2{0.0, 0.0}, Point2{-cfg.base_len / 2.0, -range},
                       Point2{cfg.base_len / 2.0, -range}};
  return cfg;
}

Point2 rotate_cw(Point2 v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

FovState rotate_fov(const FovConfig& cfg, Point2 apex, double theta) {
  FovState state;
  state.rotation = theta;
  state.apex = apex;
  for (std::size_t i = 0; i < 3; ++i) {
    state.vertices[i] = rotate_cw(cfg.base_vertices[i], theta) + apex;
  }
  return state;
}

std::optional<RaySegmentHit> ray_segment_intersect(const Ray& ray, const Segment& seg) {
  // [ target-origin | start-end ] [s r]^T = start - origin
  const Point2 d = ray.target - ray.origin;
  const Point2 e = seg.start - seg.end;
  const Point2 rhs = seg.start - ray.origin;

  const double det = d.x * e.y - e.x * d.y;
  if (std::abs(det) < kSingularDet) {
    return std::nullopt;
  }
  const double s = (rhs.x * e.y - e.x * rhs.y) / det;
  const double r = (d.x * rhs.y - rhs.x * d.y) / det;
  if (s < -kGeomTol || s > 1.0 + kGeomTol || r < -kGeomTol || r > 1.0 + kGeomTol) {
    return std::nullopt;
  }
  RaySegmentHit hit;
  hit.s = s;
  hit.r = r;
  hit.point = ray.origin + d * s;
  return hit;
}

bool point_in_triangle(Point2 p, const FovState& fov) {
  // Signed distance of p to each directed edge; all non-negative (up to
  // tolerance) after orienting the triangle CCW means inside-or-on-boundary.
  const auto& v = fov.vertices;
  const double area2 = cross(v[1] - v[0], v[2] - v[0]);
  const double orient = area2 >= 0.0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % 3];
    const double len = distance(a, b);
    if (len == 0.0) continue;
    const double signed_dist = orient * cross(b - a, p - a) / len;
    if (signed_dist < -kGeomTol) return false;
  }
  return true;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("convex hull needs at least 3 points");
  }
  std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
               points.end());

  const std::size_t n = points.size();
  if (n < 3) {
    throw std::invalid_argument("convex hull needs at least 3 distinct points");
  }

  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw std::invalid_argument("degenerate (collinear) point set has no polygonal hull");
  }
  return hull;
}

}  // namespace covplan
