#pragma once

#include <optional>
#include <set>
#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/object_model.hpp"

namespace covplan {

// The finite set of light-rays entering the sensor for one FOV state. Ray
// origins are evenly spaced along the FOV base (both base corners included);
// every ray ends at the apex.
struct RayBundle {
  std::vector<Ray> rays;
  FovState fov;
};

// Origins at base parameter k/(n_rays-1), k = 0..n_rays-1. n_rays >= 2.
RayBundle build_ray_bundle(const FovState& fov, std::size_t n_rays);

// Index of the boundary segment the ray crosses last (largest ray parameter
// s, i.e. closest to the sensor), or nullopt when the ray misses the object.
// If several segments tie at the maximal s (the ray passes through a shared
// vertex), the smallest segment index is returned.
std::optional<std::size_t> last_intersection(const Ray& ray, const ObjectModel& obj);

// All segment indices whose intersection parameter lies within kGeomTol of
// the maximal s; empty when the ray misses. A vertex hit credits both
// incident segments.
std::vector<std::size_t> last_intersections(const Ray& ray, const ObjectModel& obj);

struct VisibilityResult {
  std::vector<std::optional<std::size_t>> visible_segment_per_ray;
  std::set<std::size_t> covered_points;
};

// A target point is covered iff it lies inside the FOV triangle and some
// ray's last-intersected segment has the point as one of its endpoints.
std::set<std::size_t> covered_points(const FovState& fov, const RayBundle& bundle,
                                     const ObjectModel& obj);

VisibilityResult compute_visibility(const FovState& fov, const RayBundle& bundle,
                                    const ObjectModel& obj);

}  // namespace covplan
