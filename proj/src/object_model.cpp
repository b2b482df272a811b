#include "covplan/object_model.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace covplan {

double bell_value(const BellCurveParams& params, double x) {
  const double d = x - params.center;
  return params.height * std::exp(-(d * d) / (2.0 * params.width * params.width));
}

namespace {

std::vector<HalfPlane> hull_half_planes(const std::vector<Point2>& hull) {
  std::vector<HalfPlane> planes;
  planes.reserve(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i];
    const Point2 b = hull[(i + 1) % hull.size()];
    const Point2 edge = b - a;
    const double len = norm(edge);
    // Hull is CCW, so (dy, -dx) points outward.
    const Point2 n{edge.y / len, -edge.x / len};
    planes.push_back(HalfPlane{n, dot(n, a)});
  }
  return planes;
}

}  // namespace

ObjectModel make_object(std::vector<Point2> boundary_points) {
  if (boundary_points.size() < 3) {
    throw std::invalid_argument("object needs at least 3 boundary points");
  }
  ObjectModel obj;
  obj.points = std::move(boundary_points);
  const std::size_t n = obj.points.size();

  // Closed CCW loop: closing chord first sample -> last sample, then back
  // along the curve. For bell samples (curve above the chord) this traverses
  // the interior on the left.
  obj.segments.reserve(n);
  obj.segment_points.reserve(n);
  obj.segments.push_back(Segment{obj.points.front(), obj.points.back()});
  obj.segment_points.push_back({0, n - 1});
  for (std::size_t i = n - 1; i > 0; --i) {
    obj.segments.push_back(Segment{obj.points[i], obj.points[i - 1]});
    obj.segment_points.push_back({i, i - 1});
  }

  obj.hull = convex_hull(obj.points);
  obj.half_planes = hull_half_planes(obj.hull);

  Point2 sum;
  for (const Point2& p : obj.points) sum = sum + p;
  obj.centroid = sum * (1.0 / static_cast<double>(n));
  return obj;
}

ObjectModel sample_bell_object(const BellCurveParams& params, std::size_t n_points,
                               double window_sigmas) {
  if (n_points < 3) {
    throw std::invalid_argument("bell object needs at least 3 samples");
  }
  if (!(params.height > 0.0) || !(params.width > 0.0)) {
    throw std::invalid_argument("bell parameters a and c must be positive");
  }
  const double lo = params.center - window_sigmas * params.width;
  const double hi = params.center + window_sigmas * params.width;
  std::vector<Point2> samples;
  samples.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    samples.push_back(Point2{x, bell_value(params, x)});
  }
  ObjectModel obj = make_object(std::move(samples));
  obj.params = params;
  return obj;
}

bool is_inside(const ObjectModel& obj, Point2 x) {
  for (const HalfPlane& hp : obj.half_planes) {
    if (dot(hp.normal, x) > hp.offset + kGeomTol) return false;
  }
  return true;
}

Point2 centroid_of(const ObjectModel& obj) {
  if (obj.points.empty()) throw std::invalid_argument("centroid of empty object");
  Point2 sum;
  for (const Point2& p : obj.points) sum = sum + p;
  return sum * (1.0 / static_cast<double>(obj.points.size()));
}

std::string object_to_json(const ObjectModel& obj) {
  nlohmann::json doc;
  doc["a"] = obj.params.height;
  doc["b"] = obj.params.center;
  doc["c"] = obj.params.width;
  doc["seed"] = obj.seed;
  auto& pts = doc["points"] = nlohmann::json::array();
  for (const Point2& p : obj.points) pts.push_back({p.x, p.y});
  return doc.dump();
}

ObjectModel object_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<Point2> pts;
  for (const auto& p : doc.at("points")) {
    pts.push_back(Point2{p.at(0).get<double>(), p.at(1).get<double>()});
  }
  ObjectModel obj = make_object(std::move(pts));
  obj.params.height = doc.at("a").get<double>();
  obj.params.center = doc.at("b").get<double>();
  obj.params.width = doc.at("c").get<double>();
  obj.seed = doc.value("seed", std::uint64_t{0});
  return obj;
}

}  // namespace covplan
