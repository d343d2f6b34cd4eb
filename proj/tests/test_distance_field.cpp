#include <cmath>
#include <random>

#include "doctest.h"
#include "medial/distance_field.hpp"

using namespace medial;

namespace {

const ClosedSet kTwoPoints = ClosedSet::points({{-1.0, 0.0}, {1.0, 0.0}});
const ClosedSet kCircle(2, {Ball{{0.0, 0.0}, 1.0, false}});

ClosedSet random_point_set(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(-1.8, 1.8);
  std::vector<Point> pts;
  for (int i = 0; i < m; ++i) pts.push_back({u(rng), u(rng)});
  return ClosedSet::points(pts);
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance_to(kTwoPoints, Point{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(distance_to(kCircle, Point{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(distance_to(kTwoPoints, Point{0.5, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("nearest_points examples") {
  auto r = nearest_points(kTwoPoints, Point{0.0, 1.0});
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.classification == Classification::Ambiguous);
  CHECK(r.nearest.size() == 2);

  r = nearest_points(kTwoPoints, Point{0.3, 0.0});
  CHECK(r.classification == Classification::Unique);
  REQUIRE(r.nearest.size() == 1);
  CHECK(r.nearest[0] == Point{1.0, 0.0});

  // Circumcenter of a right triangle: brute-force distances to the three sites agree.
  const ClosedSet tri = ClosedSet::points({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const Point cc{0.5, 0.5};
  for (const auto& p : tri.primitives()) {
    CHECK(primitive_distance(p, cc) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  }
  r = nearest_points(tri, cc);
  CHECK(r.classification == Classification::Ambiguous);
  CHECK(r.nearest.size() == 3);

  r = nearest_points(kCircle, Point{0.0, 0.0});
  CHECK(r.classification == Classification::Ambiguous);
  CHECK(r.infinite);

  r = nearest_points(kTwoPoints, Point{1.0, 0.0});
  CHECK(r.classification == Classification::InE);
}

TEST_CASE("nearest_points invariants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int s = 0; s < 20; ++s) {
    const ClosedSet set = random_point_set(rng, 5);
    for (int k = 0; k < 200; ++k) {
      const Point x{u(rng), u(rng)};
      const auto r = nearest_points(set, x);
      REQUIRE_FALSE(r.nearest.empty());
      for (const auto& y : r.nearest) CHECK(std::abs(distance(x, y) - r.distance) <= r.tie_tolerance);
      CHECK((r.classification == Classification::InE) == (r.distance <= r.tie_tolerance));
    }
  }
}

TEST_CASE("grad_distance_fd examples") {
  const ClosedSet origin = ClosedSet::points({{0.0, 0.0}});
  auto g = grad_distance_fd(origin, Point{3.0, 4.0});
  CHECK(g.differentiable);
  CHECK(g.vector[0] == doctest::Approx(0.6).epsilon(1e-8));
  CHECK(g.vector[1] == doctest::Approx(0.8).epsilon(1e-8));

  // One-sided x1 derivatives at (0,1) are -1/sqrt2 and +1/sqrt2.
  g = grad_distance_fd(kTwoPoints, Point{0.0, 1.0});
  CHECK_FALSE(g.differentiable);
  CHECK(g.agreement_residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));

  // Single nearest point (1,0): gradient (x - p) / d.
  const Point x{0.5, 0.5};
  g = grad_distance_fd(kTwoPoints, x);
  CHECK(g.differentiable);
  const Point expected = (1.0 / std::sqrt(0.5)) * (x - Point{1.0, 0.0});
  CHECK(g.vector[0] == doctest::Approx(expected[0]).epsilon(1e-8));
  CHECK(g.vector[1] == doctest::Approx(expected[1]).epsilon(1e-8));

  CHECK_THROWS_AS(grad_distance_fd(kTwoPoints, Point{1.0, 0.0}), PointInSetError);
}

TEST_CASE("reconstruct_nearest examples") {
  const ClosedSet origin = ClosedSet::points({{0.0, 0.0}});
  auto p = reconstruct_nearest(origin, Point{3.0, 4.0});
  CHECK(norm(p) <= 1e-4);

  const ClosedSet seg(2, {Segment{{0.0, 0.0}, {2.0, 0.0}}});
  p = reconstruct_nearest(seg, Point{1.0, 1.0});
  CHECK(distance(p, Point{1.0, 0.0}) <= 1e-4);

  // Radial projection onto the circle.
  p = reconstruct_nearest(kCircle, Point{2.0, 0.0});
  CHECK(distance(p, Point{1.0, 0.0}) <= 1e-4);

  CHECK_THROWS_AS(reconstruct_nearest(kTwoPoints, Point{0.0, 1.0}), NotDifferentiableError);
}

TEST_CASE("distance field properties on random sets") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const FieldOptions opts;
  for (int s = 0; s < 10; ++s) {
    std::vector<Primitive> prims{SitePoint{{u(rng), u(rng)}}, Segment{{u(rng), u(rng)}, {u(rng), u(rng)}},
                                 Ball{{u(rng), u(rng)}, 0.2 + unit(rng), false}};
    const ClosedSet set(2, prims);

    double lipschitz = -1.0;
    for (int k = 0; k < 10000; ++k) {
      const Point x{u(rng), u(rng)}, y{u(rng), u(rng)};
      lipschitz = std::max(lipschitz, std::abs(distance_to(set, x) - distance_to(set, y)) - distance(x, y));
    }
    CHECK(lipschitz <= 1e-12);

    for (int k = 0; k < 300; ++k) {
      const Point x{u(rng), u(rng)};
      const auto r = nearest_points(set, x, opts);
      if (r.classification != Classification::Unique) continue;
      const Point& p = r.nearest[0];
      // d decreases with slope 1 along the projection segment.
      const double t = unit(rng);
      CHECK(std::abs(distance_to(set, x + t * (p - x)) - (1 - t) * r.distance) <= 1e-12);

      const auto g = grad_distance_fd(set, x, opts);
      if (g.differentiable) {
        CHECK(norm(g.vector) <= 1 + 10 * opts.step);
        CHECK(distance(x - r.distance * g.vector, p) <= 100 * opts.step);
      }
    }
  }
}

TEST_CASE("ambiguous points are never flagged differentiable") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    const Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
    const ClosedSet set = ClosedSet::points({p, q});
    // A point on the perpendicular bisector.
    const Point dir{-(q - p)[1], (q - p)[0]};
    const Point x = 0.5 * (p + q) + u(rng) * dir;
    const auto r = nearest_points(set, x);
    if (r.classification != Classification::Ambiguous) continue;
    CHECK_FALSE(grad_distance_fd(set, x).differentiable);
  }
}
