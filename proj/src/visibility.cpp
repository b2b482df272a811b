#include "covplan/visibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace covplan {

RayBundle build_ray_bundle(const FovState& fov, std::size_t n_rays) {
  if (n_rays < 2) {
    throw std::invalid_argument("ray bundle needs at least 2 rays");
  }
  RayBundle bundle;
  bundle.fov = fov;
  bundle.rays.reserve(n_rays);
  const Point2 base_a = fov.vertices[1];
  const Point2 base_b = fov.vertices[2];
  for (std::size_t k = 0; k < n_rays; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_rays - 1);
    const Point2 origin = base_a + (base_b - base_a) * t;
    bundle.rays.push_back(Ray{origin, fov.apex});
  }
  return bundle;
}

std::vector<std::size_t> last_intersections(const Ray& ray, const ObjectModel& obj) {
  double best_s = -1.0;
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < obj.segments.size(); ++i) {
    const auto hit = ray_segment_intersect(ray, obj.segments[i]);
    if (!hit) continue;
    if (hit->s > best_s + kGeomTol) {
      best_s = hit->s;
      best.clear();
      best.push_back(i);
    } else if (hit->s >= best_s - kGeomTol) {
      best_s = std::max(best_s, hit->s);
      best.push_back(i);
    }
  }
  return best;
}

std::optional<std::size_t> last_intersection(const Ray& ray, const ObjectModel& obj) {
  const auto ties = last_intersections(ray, obj);
  if (ties.empty()) return std::nullopt;
  return *std::min_element(ties.begin(), ties.end());
}

VisibilityResult compute_visibility(const FovState& fov, const RayBundle& bundle,
                                    const ObjectModel& obj) {
  VisibilityResult result;
  result.visible_segment_per_ray.reserve(bundle.rays.size());

  std::vector<bool> segment_visible(obj.segments.size(), false);
  for (const Ray& ray : bundle.rays) {
    const auto ties = last_intersections(ray, obj);
    if (ties.empty()) {
      result.visible_segment_per_ray.push_back(std::nullopt);
      continue;
    }
    result.visible_segment_per_ray.push_back(*std::min_element(ties.begin(), ties.end()));
    for (std::size_t seg : ties) segment_visible[seg] = true;
  }

  for (std::size_t i = 0; i < obj.points.size(); ++i) {
    if (!point_in_triangle(obj.points[i], fov)) continue;
    for (std::size_t seg = 0; seg < obj.segments.size(); ++seg) {
      if (!segment_visible[seg]) continue;
      const auto& ends = obj.segment_points[seg];
      if (ends[0] == i || ends[1] == i) {
        result.covered_points.insert(i);
        break;
      }
    }
  }
  return result;
}

std::set<std::size_t> covered_points(const FovState& fov, const RayBundle& bundle,
                                     const ObjectModel& obj) {
  return compute_visibility(fov, bundle, obj).covered_points;
}

}  // namespace covplan
