#pragma once

#include <array>
#include <optional>
#include <vector>

namespace covplan {

// Absolute tolerance for geometric comparisons, in meters. The workspace is
// desk-scale (~20 m), so absolute rather than relative tolerances are used
// throughout.
inline constexpr double kGeomTol = 1e-9;

// A 2x2 linear system with |det| below this is treated as singular
// (parallel or collinear ray/segment), i.e. no intersection.
inline constexpr double kSingularDet = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2() = default;
  constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point2 operator+(Point2 r) const { return {x + r.x, y + r.y}; }
  constexpr Point2 operator-(Point2 r) const { return {x - r.x, y - r.y}; }
  constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);
double distance(Point2 a, Point2 b);

// Closed segment from start to end; start != end.
struct Segment {
  Point2 start;
  Point2 end;
};

// Light-ray parameterized origin -> target with s in [0, 1]. The origin is a
// point on the camera's FOV base, the target is the optical sensor (the
// agent's position), so larger s means closer to the sensor.
struct Ray {
  Point2 origin;
  Point2 target;
};

// Isosceles triangular camera footprint with the apex at the sensor.
// base_vertices holds the canonical downward-facing triangle with the apex
// at the origin: (0,0), (-base_len/2, -range), (base_len/2, -range).
struct FovConfig {
  double apex_angle = 0.0;  // radians, in (0, pi)
  double range = 0.0;       // meters
  double side_len = 0.0;
  double base_len = 0.0;
  std::array<Point2, 3> base_vertices{};
};

// A placed and rotated FOV. vertices[0] is the apex (== agent position).
struct FovState {
  std::array<Point2, 3> vertices{};
  double rotation = 0.0;  // radians
  Point2 apex;
};

// Throws std::domain_error unless 0 < apex_angle < pi and range > 0.
FovConfig make_fov_config(double apex_angle, double range);

// Applies the rotation matrix [[cos, sin], [-sin, cos]] to the canonical
// vertices and translates by apex. Note the +sin in the top-right corner:
// positive angles rotate the footprint clockwise.
FovState rotate_fov(const FovConfig& cfg, Point2 apex, double theta);

// Rotate a single vector by the same (clockwise-positive) matrix.
Point2 rotate_cw(Point2 v, double theta);

struct RaySegmentHit {
  double s = 0.0;  // ray parameter
  double r = 0.0;  // segment parameter
  Point2 point;
};

// Solves the 2x2 system for (s, r); a hit exists iff the system is
// non-singular and both parameters fall in [0, 1] (closed, tolerance
// kGeomTol). Collinear overlap reports no intersection.
std::optional<RaySegmentHit> ray_segment_intersect(const Ray& ray, const Segment& seg);

// True iff p is inside or on the boundary of the triangle (distance to an
// edge within kGeomTol counts as inside).
bool point_in_triangle(Point2 p, const FovState& fov);

// Monotone-chain hull; returns vertices in CCW order starting from the
// lexicographically smallest point. Collinear points on hull edges are
// dropped. Throws std::invalid_argument for fewer than 3 distinct points or
// an all-collinear input.
std::vector<Point2> convex_hull(std::vector<Point2> points);

}  // namespace covplan
