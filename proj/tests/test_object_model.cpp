#include <doctest.h>

#include <cmath>

#include "covplan/object_model.hpp"
#include "covplan/rng.hpp"
#include "oracles.hpp"

using namespace covplan;

TEST_SUITE("object_model") {

TEST_CASE("bell sampling places points on the curve") {
  const BellCurveParams params{8.0, 8.0, 2.0};
  const ObjectModel obj = sample_bell_object(params, 11);

  REQUIRE(obj.points.size() == 11);
  // x samples at 2, 3.2, 4.4, ..., 14 over [b-3c, b+3c].
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(obj.points[i].x == doctest::Approx(2.0 + 1.2 * i).epsilon(1e-12));
  }
  CHECK(obj.points[0].y == doctest::Approx(8.0 * std::exp(-4.5)).epsilon(1e-12));
  CHECK(obj.points[0].y == doctest::Approx(0.0888720).epsilon(1e-5));
  CHECK(obj.points[5].x == doctest::Approx(8.0));
  CHECK(obj.points[5].y == doctest::Approx(8.0));  // peak sample

  // Boundary loop: one segment per point, closed.
  CHECK(obj.segments.size() == 11);
  CHECK(obj.segment_points.size() == 11);

  SUBCASE("centroid is the mean of the samples") {
    const Point2 c = centroid_of(obj);
    CHECK(c.x == doctest::Approx(8.0).epsilon(1e-12));
    // Sum of the 11 curve values divided by 11 (computed independently from
    // the formula; the bell tails pull the mean well below the peak).
    double sum = 0.0;
    for (std::size_t i = 0; i < 11; ++i) sum += bell_value(params, 2.0 + 1.2 * i);
    CHECK(c.y == doctest::Approx(sum / 11.0).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(3.0358762557487045).epsilon(1e-9));
  }

  SUBCASE("hull for this realization has 5 vertices") {
    // The outer tail samples are convex-side points and fall strictly inside
    // the hull; only the extremes and the three near-peak samples are hull
    // vertices. The all-triples oracle agrees.
    CHECK(obj.hull.size() == 5);
    const auto oracle = testing::hull_by_all_triples(obj.points);
    CHECK(oracle.size() == 5);
    CHECK(obj.half_planes.size() == obj.hull.size());
  }
}

TEST_CASE("minimal three-point object") {
  const ObjectModel obj = sample_bell_object(BellCurveParams{4.0, 10.0, 1.5}, 3);
  CHECK(obj.points.size() == 3);
  CHECK(obj.segments.size() == 3);
  CHECK(obj.half_planes.size() == 3);
  CHECK_THROWS_AS(sample_bell_object(BellCurveParams{4.0, 10.0, 1.5}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_bell_object(BellCurveParams{-1.0, 10.0, 1.5}, 5),
                  std::invalid_argument);
}

TEST_CASE("segments form a closed CCW loop whose endpoints satisfy the line equations") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const BellCurveParams params{rng.uniform(1.0, 18.0), rng.uniform(5.0, 15.0),
                                 rng.uniform(1.0, 4.0)};
    const ObjectModel obj = sample_bell_object(params, 11);

    // Closed loop: consecutive segments share endpoints, signed area > 0.
    double area2 = 0.0;
    for (std::size_t i = 0; i < obj.segments.size(); ++i) {
      const Segment& cur = obj.segments[i];
      const Segment& next = obj.segments[(i + 1) % obj.segments.size()];
      REQUIRE(distance(cur.end, next.start) < 1e-12);
      area2 += cross(cur.start, cur.end);
    }
    REQUIRE(area2 > 0.0);

    // Hull edge endpoints satisfy their own half-plane equations exactly.
    for (std::size_t i = 0; i < obj.hull.size(); ++i) {
      const HalfPlane& hp = obj.half_planes[i];
      const Point2 a = obj.hull[i];
      const Point2 b = obj.hull[(i + 1) % obj.hull.size()];
      REQUIRE(std::abs(dot(hp.normal, a) - hp.offset) < 1e-9);
      REQUIRE(std::abs(dot(hp.normal, b) - hp.offset) < 1e-9);
    }
  }
}

TEST_CASE("inside test against the half-planes") {
  const ObjectModel obj = sample_bell_object(BellCurveParams{8.0, 8.0, 2.0}, 11);

  CHECK(is_inside(obj, obj.centroid));
  CHECK_FALSE(is_inside(obj, {0.0, 0.0}));  // outside the x-range of the hull

  SUBCASE("a point just outside a hull edge midpoint is outside") {
    for (std::size_t i = 0; i < obj.hull.size(); ++i) {
      const Point2 mid = (obj.hull[i] + obj.hull[(i + 1) % obj.hull.size()]) * 0.5;
      const Point2 outside = mid + obj.half_planes[i].normal * 0.01;
      CHECK_FALSE(is_inside(obj, outside));
      CHECK(is_inside(obj, mid));  // boundary counts as collision
    }
  }

  SUBCASE("hull samples are inside; nudged along the outward normal they are not") {
    for (const Point2& v : obj.hull) {
      CHECK(is_inside(obj, v));
      // Find a half-plane this vertex supports and push along its normal.
      for (std::size_t i = 0; i < obj.half_planes.size(); ++i) {
        if (std::abs(dot(obj.half_planes[i].normal, v) - obj.half_planes[i].offset) < 1e-9) {
          CHECK_FALSE(is_inside(obj, v + obj.half_planes[i].normal * 1e-3));
          break;
        }
      }
    }
  }

  SUBCASE("agrees with a convex-polygon membership oracle on random points") {
    Rng rng(77);
    for (int trial = 0; trial < 100000; ++trial) {
      const Point2 p{rng.uniform(-2, 22), rng.uniform(-2, 22)};
      double min_edge_dist = 1e9;
      for (std::size_t i = 0; i < obj.hull.size(); ++i) {
        min_edge_dist = std::min(
            min_edge_dist, testing::point_segment_distance(p, obj.hull[i],
                                                           obj.hull[(i + 1) % obj.hull.size()]));
      }
      if (min_edge_dist < 1e-7) continue;  // tolerance band
      REQUIRE(is_inside(obj, p) == testing::inside_convex_polygon(p, obj.hull, 0.0));
    }
  }
}

TEST_CASE("centroid of an explicit triangle") {
  const ObjectModel obj = make_object({{0, 0}, {2, 0}, {1, 3}});
  const Point2 c = centroid_of(obj);
  CHECK(c.x == doctest::Approx(1.0));
  CHECK(c.y == doctest::Approx(1.0));
}

TEST_CASE("object json round-trip") {
  ObjectModel obj = sample_bell_object(BellCurveParams{5.0, 6.0, 1.4}, 11);
  obj.seed = 42;
  const std::string doc = object_to_json(obj);
  const ObjectModel back = object_from_json(doc);
  REQUIRE(back.points.size() == obj.points.size());
  for (std::size_t i = 0; i < obj.points.size(); ++i) {
    CHECK(distance(back.points[i], obj.points[i]) < 1e-15);
  }
  CHECK(back.params.height == obj.params.height);
  CHECK(back.params.center == obj.params.center);
  CHECK(back.params.width == obj.params.width);
  CHECK(back.seed == 42);
}

}  // TEST_SUITE
