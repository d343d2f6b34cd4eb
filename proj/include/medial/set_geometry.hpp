#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "medial/point.hpp"

namespace medial {

struct SitePoint {
  Point at;
};

struct Segment {
  Point a;
  Point b;
};

/// Closed polygonal curve through `vertices` (the boundary only, not the
/// filled region).
struct PolygonBoundary {
  std::vector<Point> vertices;
};

/// Sphere |x - center| = radius, or the closed ball when `solid` is set.
/// A zero radius degenerates to the single point `center`.
struct Ball {
  Point center;
  double radius = 0.0;
  bool solid = false;
};

using Primitive = std::variant<SitePoint, Segment, PolygonBoundary, Ball>;

/// Which piece of a primitive realises a nearest point. Segment features:
/// 0 = endpoint a, 1 = interior, 2 = endpoint b. Polygon features: 2k for
/// vertex k, 2k+1 for the interior of edge k -> k+1.
struct FeatureId {
  std::size_t primitive = 0;
  std::size_t feature = 0;
  bool operator==(const FeatureId&) const = default;
};

struct NearestCandidate {
  Point point;
  double distance = 0.0;
  std::size_t feature = 0;
};

/// Nearest points of one primitive. `infinite` is raised when a whole sphere
/// is equidistant (query at the center); `candidates` then holds one witness.
struct PrimitiveNearest {
  std::vector<NearestCandidate> candidates;
  bool infinite = false;
};

class SetFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double primitive_distance(const Primitive& p, const Point& x);

/// All points of `p` at distance within `tie_tolerance` of the minimum.
PrimitiveNearest primitive_nearest(const Primitive& p, const Point& x,
                                   double tie_tolerance = 1e-9);

std::size_t primitive_dimension(const Primitive& p);

/// Nonempty closed set in R^n, n in {1,2,3}, given as a finite union of
/// primitives. Immutable after construction.
class ClosedSet {
 public:
  ClosedSet(std::size_t dimension, std::vector<Primitive> primitives);

  std::size_t dimension() const { return dim_; }
  const std::vector<Primitive>& primitives() const { return primitives_; }

  static ClosedSet from_json(const nlohmann::json& doc);
  static ClosedSet load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// Convenience for finite point sets.
  static ClosedSet points(const std::vector<Point>& sites);

 private:
  std::size_t dim_;
  std::vector<Primitive> primitives_;
};

}  // namespace medial
