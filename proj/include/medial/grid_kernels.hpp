#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "medial/distance_field.hpp"
#include "medial/point.hpp"
#include "medial/set_geometry.hpp"

// Grid sweeps over a ClosedSet. Every kernel has an OpenMP version and a
// *_serial reference with identical output; tests compare the two and
// medial_bench times them.

namespace medial {

struct FieldSample {
  Point x;
  double distance = 0.0;
  Classification classification = Classification::Unique;
  /// Zero vector and differentiable = false on nodes of E.
  GradientEstimate gradient;
};

std::vector<FieldSample> sweep_distance_field(const ClosedSet& set, const Grid& grid, const FieldOptions& opts = {});
std::vector<FieldSample> sweep_distance_field_serial(const ClosedSet& set, const Grid& grid,
                                                     const FieldOptions& opts = {});

/// CSV: x1..xn, d, classification, g1..gn, differentiable.
void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples);

struct NodeState {
  Classification classification = Classification::Unique;
  FeatureId identity;
  /// First nearest point.
  Point projection;
};

/// A crossing of the ambiguous locus located on a grid edge.
struct EdgeHit {
  std::size_t node = 0;
  std::size_t axis = 0;
  Point point;
};

struct GridScan {
  std::vector<NodeState> nodes;
  /// Sorted by (node, axis).
  std::vector<EdgeHit> hits;
};

struct ScanOptions {
  FieldOptions field;
  /// Bisection stops once the bracket is shorter than this.
  double localization = 1e-8;
};

/// Classifies every node, then bisects each grid edge whose endpoints have
/// different nearest-feature identity. A bisected crossing is kept only when
/// the nearest point jumps across the final bracket by more than the
/// separation threshold, so continuous feature hand-offs are discarded.
GridScan scan_grid(const ClosedSet& set, const Grid& grid, const ScanOptions& opts = {});
GridScan scan_grid_serial(const ClosedSet& set, const Grid& grid, const ScanOptions& opts = {});

/// Bisection on one edge; exposed for tests.
std::optional<Point> locate_crossing(const ClosedSet& set, const Point& a, const Point& b, const ScanOptions& opts);

}  // namespace medial
