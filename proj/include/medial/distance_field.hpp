#pragma once

#include <stdexcept>
#include <vector>

#include "medial/point.hpp"
#include "medial/set_geometry.hpp"

namespace medial {

enum class Classification { InE, Unique, Ambiguous };

const char* to_string(Classification c);

struct FieldOptions {
  double tie_tolerance = 1e-9;
  /// Nearest candidates closer than this are treated as one point.
  double separation = 1e-6;
  /// Finite-difference step h.
  double step = 1e-5;
};

struct NearestResult {
  double distance = 0.0;
  std::vector<Point> nearest;
  Classification classification = Classification::Unique;
  double tie_tolerance = 0.0;
  /// Feature realising the smallest distance (first primitive on exact ties).
  FeatureId identity;
  /// Some nearest primitive is a sphere queried at its center.
  bool infinite = false;
};

/// Forward/backward and Richardson-checked finite-difference gradient of d.
struct GradientEstimate {
  Point vector;
  double step = 0.0;
  bool differentiable = false;
  double agreement_residual = 0.0;
};

class PointInSetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotDifferentiableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// d(x) = dist(x, E).
double distance_to(const ClosedSet& set, const Point& x);

NearestResult nearest_points(const ClosedSet& set, const Point& x, const FieldOptions& opts = {});

/// Throws PointInSetError when d(x) <= tie tolerance.
GradientEstimate grad_distance_fd(const ClosedSet& set, const Point& x, const FieldOptions& opts = {});

/// x - d(x) grad d(x). For every primitive family here the error against the
/// exact projection stays below 100 * step away from the ambiguous locus.
/// Throws NotDifferentiableError when the gradient check fails.
Point reconstruct_nearest(const ClosedSet& set, const Point& x, const FieldOptions& opts = {});

}  // namespace medial
