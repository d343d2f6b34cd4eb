#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "medial/point.hpp"

namespace medial {

struct SkeletonEdge {
  Point a;
  Point b;
  std::size_t site_p = 0;
  std::size_t site_q = 0;

  double length() const { return distance(a, b); }
};

/// Voronoi 1-skeleton of a planar point set clipped to `window`, built by
/// clipping every bisector against all competing half-planes. O(m^3).
/// Throws std::invalid_argument on coincident sites or fewer than two sites.
std::vector<SkeletonEdge> voronoi_medial_axis_2d(const std::vector<Point>& sites, const Window& window);

/// Euclidean distance from x to the closest skeleton edge.
double distance_to_skeleton(const std::vector<SkeletonEdge>& edges, const Point& x);

double total_length(const std::vector<SkeletonEdge>& edges);

}  // namespace medial
