#include <doctest.h>

#include <cmath>

#include "covplan/geometry.hpp"
#include "covplan/rng.hpp"
#include "oracles.hpp"

using namespace covplan;

namespace {
constexpr double kPi = 3.14159265358979323846;
double deg(double d) { return d * kPi / 180.0; }
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("fov config from apex angle and range") {
  const FovConfig cfg = make_fov_config(deg(40.0), 10.0);
  CHECK(cfg.side_len == doctest::Approx(10.641777724759121).epsilon(1e-12));
  CHECK(cfg.base_len == doctest::Approx(7.279404685324047).epsilon(1e-12));
  CHECK(cfg.base_vertices[0].x == 0.0);
  CHECK(cfg.base_vertices[0].y == 0.0);
  CHECK(cfg.base_vertices[1].x == doctest::Approx(-cfg.base_len / 2));
  CHECK(cfg.base_vertices[1].y == doctest::Approx(-10.0));
  CHECK(cfg.base_vertices[2].x == doctest::Approx(cfg.base_len / 2));

  const FovConfig right = make_fov_config(kPi / 2.0, 1.0);
  CHECK(right.side_len == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(right.base_len == doctest::Approx(2.0).epsilon(1e-12));

  // Small-angle limit: base_len -> phi * range.
  const FovConfig narrow = make_fov_config(1e-4, 1.0);
  CHECK(std::abs(narrow.base_len - 1e-4) < 1e-6);

  CHECK_THROWS_AS(make_fov_config(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_fov_config(kPi, 1.0), std::domain_error);
  CHECK_THROWS_AS(make_fov_config(deg(40.0), 0.0), std::domain_error);
  CHECK_THROWS_AS(make_fov_config(deg(40.0), -2.0), std::domain_error);
}

TEST_CASE("fov rotation") {
  const FovConfig cfg = make_fov_config(deg(40.0), 10.0);

  SUBCASE("identity") {
    const FovState fov = rotate_fov(cfg, {0.0, 0.0}, 0.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(fov.vertices[i].x == doctest::Approx(cfg.base_vertices[i].x).epsilon(1e-15));
      CHECK(fov.vertices[i].y == doctest::Approx(cfg.base_vertices[i].y).epsilon(1e-15));
    }
  }

  SUBCASE("half turn reflects the base") {
    const FovState fov = rotate_fov(cfg, {0.0, 0.0}, kPi);
    CHECK(fov.vertices[1].x == doctest::Approx(cfg.base_len / 2).epsilon(1e-9));
    CHECK(fov.vertices[1].y == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(fov.vertices[2].x == doctest::Approx(-cfg.base_len / 2).epsilon(1e-9));
    CHECK(fov.vertices[2].y == doctest::Approx(10.0).epsilon(1e-9));
  }

  SUBCASE("quarter turn is clockwise") {
    // The rotation matrix carries +sin in the top-right corner, so a positive
    // quarter turn sends the downward base midpoint (0,-h) to (-h, 0).
    const FovState fov = rotate_fov(cfg, {5.0, 5.0}, kPi / 2.0);
    const Point2 base_mid = (fov.vertices[1] + fov.vertices[2]) * 0.5;
    CHECK(base_mid.x == doctest::Approx(-5.0).epsilon(1e-9));
    CHECK(base_mid.y == doctest::Approx(5.0).epsilon(1e-9));
  }

  SUBCASE("isometry over random angles") {
    Rng rng(42);
    const FovState ref = rotate_fov(cfg, {0.0, 0.0}, 0.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const double theta = rng.uniform(-10.0, 10.0);
      const Point2 apex{rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0)};
      const FovState fov = rotate_fov(cfg, apex, theta);
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          const double d0 = distance(ref.vertices[i], ref.vertices[j]);
          const double d1 = distance(fov.vertices[i], fov.vertices[j]);
          REQUIRE(std::abs(d0 - d1) < 1e-9);
        }
      }
    }
  }

  SUBCASE("rotation followed by its inverse recovers the vertices") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      const double theta = rng.uniform(-10.0, 10.0);
      const FovState fwd = rotate_fov(cfg, {0.0, 0.0}, theta);
      FovConfig moved = cfg;
      moved.base_vertices = fwd.vertices;
      const FovState back = rotate_fov(moved, {0.0, 0.0}, -theta);
      for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(back.vertices[i].x - cfg.base_vertices[i].x) < 1e-9);
        REQUIRE(std::abs(back.vertices[i].y - cfg.base_vertices[i].y) < 1e-9);
      }
    }
  }
}

TEST_CASE("ray-segment intersection solves the 2x2 system") {
  SUBCASE("perpendicular crossing at midpoints") {
    const auto hit = ray_segment_intersect(Ray{{0, 0}, {2, 0}}, Segment{{1, -1}, {1, 1}});
    REQUIRE(hit.has_value());
    CHECK(hit->s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hit->r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hit->point.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hit->point.y == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("parallel lines never intersect") {
    CHECK_FALSE(ray_segment_intersect(Ray{{0, 0}, {2, 0}}, Segment{{0, 1}, {2, 1}}).has_value());
  }

  SUBCASE("collinear overlap reports no intersection") {
    CHECK_FALSE(ray_segment_intersect(Ray{{0, 0}, {2, 0}}, Segment{{1, 0}, {3, 0}}).has_value());
  }

  SUBCASE("diagonal ray against horizontal segment") {
    const auto hit = ray_segment_intersect(Ray{{0, 0}, {4, 4}}, Segment{{0, 2}, {4, 2}});
    REQUIRE(hit.has_value());
    CHECK(hit->s == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hit->r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hit->point.x == doctest::Approx(2.0));
    CHECK(hit->point.y == doctest::Approx(2.0));
    // Confirmed by the parameter-sweep oracle.
    CHECK(testing::sweep_min_distance(Ray{{0, 0}, {4, 4}}, Segment{{0, 2}, {4, 2}}, 1000000) <
          1e-5);
  }

  SUBCASE("endpoints count as intersections") {
    const auto hit = ray_segment_intersect(Ray{{0, 0}, {2, 0}}, Segment{{2, 0}, {2, 2}});
    REQUIRE(hit.has_value());
    CHECK(hit->s == doctest::Approx(1.0));
    CHECK(hit->r == doctest::Approx(0.0));
  }

  SUBCASE("reversing the segment maps r to 1-r") {
    Rng rng(99);
    int checked = 0;
    while (checked < 2000) {
      const Ray ray{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                    {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
      const Segment seg{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                        {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
      const auto fwd = ray_segment_intersect(ray, seg);
      if (!fwd) continue;
      const auto rev = ray_segment_intersect(ray, Segment{seg.end, seg.start});
      REQUIRE(rev.has_value());
      REQUIRE(std::abs(fwd->s - rev->s) < 1e-9);
      REQUIRE(std::abs(fwd->r - (1.0 - rev->r)) < 1e-9);
      REQUIRE(distance(fwd->point, rev->point) < 1e-9);
      ++checked;
    }
  }

  SUBCASE("intersection point lies on both supporting lines") {
    Rng rng(123);
    int checked = 0;
    while (checked < 2000) {
      const Ray ray{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                    {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
      const Segment seg{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                        {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
      const auto hit = ray_segment_intersect(ray, seg);
      if (!hit) continue;
      const Point2 d = ray.target - ray.origin;
      const Point2 e = seg.end - seg.start;
      const double dist_ray = std::abs(cross(d, hit->point - ray.origin)) / norm(d);
      const double dist_seg = std::abs(cross(e, hit->point - seg.start)) / norm(e);
      REQUIRE(dist_ray < 1e-9);
      REQUIRE(dist_seg < 1e-9);
      ++checked;
    }
  }
}

TEST_CASE("point in triangle") {
  FovState fov;
  fov.vertices = {Point2{0, 0}, Point2{-2, -4}, Point2{2, -4}};
  fov.apex = {0, 0};

  CHECK(point_in_triangle({0, -2}, fov));        // on the axis of symmetry
  CHECK_FALSE(point_in_triangle({0, 1}, fov));   // beyond the apex
  CHECK(point_in_triangle({1, -2}, fov));        // on the right edge
  CHECK(point_in_triangle({0, 0}, fov));         // apex itself
  CHECK(point_in_triangle({-2, -4}, fov));       // base corner
  CHECK_FALSE(point_in_triangle({2.1, -4}, fov));

  SUBCASE("agrees with the barycentric oracle") {
    Rng rng(321);
    for (int trial = 0; trial < 100000; ++trial) {
      const Point2 p{rng.uniform(-5, 5), rng.uniform(-6, 2)};
      // Skip points within the tolerance band of the boundary; both routes
      // are free to disagree inside it.
      const bool mine = point_in_triangle(p, fov);
      const bool oracle = testing::barycentric_in_triangle(p, fov.vertices, /*tol=*/0.0);
      const bool near_edge =
          testing::point_segment_distance(p, fov.vertices[0], fov.vertices[1]) < 1e-7 ||
          testing::point_segment_distance(p, fov.vertices[1], fov.vertices[2]) < 1e-7 ||
          testing::point_segment_distance(p, fov.vertices[2], fov.vertices[0]) < 1e-7;
      if (!near_edge) REQUIRE(mine == oracle);
    }
  }
}

TEST_CASE("convex hull") {
  SUBCASE("interior point dropped") {
    const auto hull = convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    CHECK(hull.size() == 3);
  }

  SUBCASE("unit square keeps all corners, CCW order") {
    const auto hull = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    REQUIRE(hull.size() == 4);
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      area2 += cross(hull[i], hull[(i + 1) % hull.size()]);
    }
    CHECK(area2 > 0.0);  // positive signed area == CCW
  }

  SUBCASE("degenerate input throws") {
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
  }

  SUBCASE("matches the all-triples oracle on random point sets") {
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Point2> pts;
      const int n = 4 + static_cast<int>(rng.uniform_below(30));
      for (int i = 0; i < n; ++i) {
        pts.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
      }
      const auto mine = convex_hull(pts);
      auto oracle = testing::hull_by_all_triples(pts);
      REQUIRE(mine.size() == oracle.size());
      for (const Point2& v : oracle) {
        const bool found = std::any_of(mine.begin(), mine.end(), [&](Point2 m) {
          return distance(m, v) < 1e-12;
        });
        REQUIRE(found);
      }
      // Convexity: every consecutive edge pair turns the same way.
      for (std::size_t i = 0; i < mine.size(); ++i) {
        const Point2 a = mine[i];
        const Point2 b = mine[(i + 1) % mine.size()];
        const Point2 c = mine[(i + 2) % mine.size()];
        REQUIRE(cross(b - a, c - b) > 0.0);
      }
      // Containment: every input point inside or on the hull.
      for (const Point2& p : pts) {
        REQUIRE(testing::inside_convex_polygon(p, mine, 1e-9));
      }
    }
  }
}

}  // TEST_SUITE
