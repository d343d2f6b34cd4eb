#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "medial/set_geometry.hpp"

using namespace medial;

namespace {

std::vector<Primitive> sample_primitives() {
  return {SitePoint{{0.3, -0.2}},
          Segment{{-1.0, 0.5}, {1.2, -0.7}},
          PolygonBoundary{{{-1.0, -1.0}, {1.0, -1.0}, {0.5, 1.0}, {-0.8, 0.9}}},
          Ball{{0.2, 0.1}, 0.8, false},
          Ball{{-0.4, 0.4}, 0.5, true},
          Ball{{1.0, 1.0}, 0.0, false}};
}

}  // namespace

TEST_CASE("primitive_distance closed forms") {
  CHECK(primitive_distance(SitePoint{{0.0, 0.0}}, Point{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(primitive_distance(Segment{{0.0, 0.0}, {2.0, 0.0}}, Point{1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(primitive_distance(Ball{{0.0, 0.0}, 1.0, false}, Point{3.0, 0.0}) == doctest::Approx(2.0));
  CHECK(primitive_distance(Ball{{0.0, 0.0}, 1.0, true}, Point{3.0, 0.0}) == doctest::Approx(2.0));
  // Sphere versus closed ball at an interior point.
  CHECK(primitive_distance(Ball{{0.0, 0.0}, 1.0, false}, Point{0.25, 0.0}) == doctest::Approx(0.75));
  CHECK(primitive_distance(Ball{{0.0, 0.0}, 1.0, true}, Point{0.25, 0.0}) == 0.0);
  // Polygon boundary, not the filled region.
  const PolygonBoundary square{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};
  CHECK(primitive_distance(square, Point{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(primitive_distance(square, Point{2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("primitive_nearest examples") {
  auto pn = primitive_nearest(SitePoint{{1.0, 0.0}}, Point{0.0, 0.0});
  REQUIRE(pn.candidates.size() == 1);
  CHECK(pn.candidates[0].point == Point{1.0, 0.0});

  pn = primitive_nearest(Segment{{-1.0, 0.0}, {1.0, 0.0}}, Point{0.0, 1.0});
  REQUIRE(pn.candidates.size() == 1);
  CHECK(pn.candidates[0].point == Point{0.0, 0.0});
  CHECK(pn.candidates[0].feature == 1);

  pn = primitive_nearest(Ball{{0.0, 0.0}, 1.0, false}, Point{0.0, 0.0});
  CHECK(pn.infinite);
  REQUIRE(pn.candidates.size() == 1);
  CHECK(norm(pn.candidates[0].point) == doctest::Approx(1.0));

  // Center of a square boundary: four edge feet tie.
  const PolygonBoundary square{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};
  pn = primitive_nearest(square, Point{0.0, 0.0});
  CHECK(pn.candidates.size() == 4);
  // Outside a corner the shared vertex is reported once.
  pn = primitive_nearest(square, Point{2.0, 2.0});
  REQUIRE(pn.candidates.size() == 1);
  CHECK(pn.candidates[0].point == Point{1.0, 1.0});
  CHECK(pn.candidates[0].feature == 4);
}

TEST_CASE("distance equals the distance to every listed nearest point") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& prim : sample_primitives()) {
    for (int k = 0; k < 2000; ++k) {
      const Point x{u(rng), u(rng)};
      const double d = primitive_distance(prim, x);
      const auto pn = primitive_nearest(prim, x);
      REQUIRE_FALSE(pn.candidates.empty());
      for (const auto& c : pn.candidates) {
        CHECK(std::abs(distance(c.point, x) - d) <= 1e-12 * std::max(1.0, d) + 1e-9);
      }
    }
  }
}

TEST_CASE("primitive_distance is 1-Lipschitz") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& prim : sample_primitives()) {
    double worst = -1.0;
    for (int k = 0; k < 10000; ++k) {
      const Point x{u(rng), u(rng)};
      const Point y{u(rng), u(rng)};
      worst = std::max(worst, std::abs(primitive_distance(prim, x) - primitive_distance(prim, y)) - distance(x, y));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("JSON loading") {
  const auto doc = nlohmann::json::parse(R"({
    "dimension": 2,
    "primitives": [
      {"type": "point", "coords": [1, 2]},
      {"type": "segment", "a": [0, 0], "b": [1, 0]},
      {"type": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]},
      {"type": "ball", "center": [0, 0], "radius": 1},
      {"type": "ball", "center": [3, 3], "radius": 0.5, "solid": true}
    ]})");
  const ClosedSet set = ClosedSet::from_json(doc);
  CHECK(set.dimension() == 2);
  CHECK(set.primitives().size() == 5);
  CHECK(std::get<Ball>(set.primitives()[4]).solid);
  CHECK(ClosedSet::from_json(set.to_json()).to_json() == set.to_json());
}

TEST_CASE("JSON rejects invalid sets with a descriptive error") {
  auto fails_with = [](const char* text, const char* needle) {
    try {
      ClosedSet::from_json(nlohmann::json::parse(text));
    } catch (const SetFormatError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "line", "a": [0,0]}]})", "unknown primitive type 'line'"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": []})", "at least one primitive"));
  CHECK(fails_with(R"({"primitives": []})", "'dimension'"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "point"}]})", "'coords'"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "point", "coords": [1]}]})", "expected 2"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "segment", "a": [1,1], "b": [1,1]}]})", "coincide"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "polygon", "vertices": [[0,0],[1,1]]}]})", "3 vertices"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "polygon", "vertices": [[0,0],[1,1],[0,0]]}]})", "repeats"));
  CHECK(fails_with(R"({"dimension": 2, "primitives": [{"type": "ball", "center": [0,0], "radius": -1}]})", "radius"));
  CHECK(fails_with(R"({"dimension": 4, "primitives": []})", "dimension"));
}

TEST_CASE("non-finite coordinates are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ClosedSet(2, {SitePoint{{nan, 0.0}}}), SetFormatError);
  CHECK_THROWS_AS(ClosedSet(2, {SitePoint{{0.0, 0.0, 0.0}}}), SetFormatError);
}
