#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

// Bell-shaped boundary curve f(x) = height * exp(-(x-center)^2 / (2 width^2)).
struct BellCurveParams {
  double height = 8.0;  // a
  double center = 8.0;  // b
  double width = 2.0;   // c
};

double bell_value(const BellCurveParams& params, double x);

// Half-plane normal . x <= offset; the normal points out of the object.
struct HalfPlane {
  Point2 normal;
  double offset = 0.0;
};

// Convex object of interest built from boundary samples.
//
// points holds the coverage targets in sampling order (ascending x for bell
// objects). segments is the closed piecewise-linear boundary loop through
// consecutive samples plus the closing chord, oriented CCW; segment_points
// maps each segment to the indices of its two endpoint samples. Collision
// queries use the convex hull of the samples (hull + half_planes): samples in
// a convex tail of the curve may fall strictly inside the hull, but they stay
// boundary segments' endpoints and therefore remain coverable.
struct ObjectModel {
  BellCurveParams params;
  std::uint64_t seed = 0;  // draw id when sampled from random intervals
  std::vector<Point2> points;
  std::vector<Segment> segments;
  std::vector<std::array<std::size_t, 2>> segment_points;
  std::vector<Point2> hull;
  std::vector<HalfPlane> half_planes;
  Point2 centroid;
};

// Builds an object from boundary samples given in boundary order (open
// curve); the closing chord from the last sample back to the first is added.
// Throws std::invalid_argument for fewer than 3 points or a degenerate hull.
ObjectModel make_object(std::vector<Point2> boundary_points);

// n_points samples (x_i, f(x_i)) with x_i evenly spaced over
// [center - window_sigmas*width, center + window_sigmas*width].
ObjectModel sample_bell_object(const BellCurveParams& params, std::size_t n_points,
                               double window_sigmas = 3.0);

// True iff x satisfies every half-plane (closed region: the boundary counts
// as a collision).
bool is_inside(const ObjectModel& obj, Point2 x);

// Arithmetic mean of the sampled points (not of the hull vertices).
Point2 centroid_of(const ObjectModel& obj);

// JSON document {a, b, c, points: [[x, y], ...], seed}.
std::string object_to_json(const ObjectModel& obj);
ObjectModel object_from_json(const std::string& text);

}  // namespace covplan
