#include "medial/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace medial {
namespace {

// Keep the part of the line base + t dir, t in [lo, hi], where <normal, x> <= offset.
bool clip(const Point& base, const Point& dir, const Point& normal, double offset, double& lo, double& hi) {
  const double a = dot(normal, dir);
  const double b = offset - dot(normal, base);
  if (std::abs(a) < 1e-300) return b >= 0.0;
  const double t = b / a;
  if (a > 0) {
    hi = std::min(hi, t);
  } else {
    lo = std::max(lo, t);
  }
  return lo <= hi;
}

}  // namespace

std::vector<SkeletonEdge> voronoi_medial_axis_2d(const std::vector<Point>& sites, const Window& window) {
  if (window.dim() != 2) throw std::invalid_argument("voronoi oracle is planar only");
  if (sites.size() < 2) throw std::invalid_argument("voronoi oracle needs at least two sites");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i].size() != 2) throw std::invalid_argument("voronoi sites must be planar");
    for (std::size_t j = 0; j < i; ++j) {
      if (sites[i] == sites[j]) throw std::invalid_argument("voronoi sites coincide");
    }
  }

  std::vector<SkeletonEdge> edges;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < sites.size(); ++p) {
    for (std::size_t q = p + 1; q < sites.size(); ++q) {
      const Point& sp = sites[p];
      const Point& sq = sites[q];
      const Point mid = 0.5 * (sp + sq);
      const Point pq = sq - sp;
      const Point dir{-pq[1], pq[0]};
      double lo = -inf, hi = inf;
      bool alive = true;
      // Window faces.
      for (std::size_t i = 0; i < 2 && alive; ++i) {
        const Point e = Point::basis(2, i);
        alive = clip(mid, dir, e, window.upper[i], lo, hi) && clip(mid, dir, -1.0 * e, -window.lower[i], lo, hi);
      }
      // Stay at least as close to p as to every other site r:
      // |x-p|^2 <= |x-r|^2  <=>  <r - p, x> * 2 <= |r|^2 - |p|^2.
      for (std::size_t r = 0; r < sites.size() && alive; ++r) {
        if (r == p || r == q) continue;
        const Point& sr = sites[r];
        alive = clip(mid, dir, 2.0 * (sr - sp), squared_norm(sr) - squared_norm(sp), lo, hi);
      }
      if (!alive || !(hi > lo)) continue;
      edges.push_back({mid + lo * dir, mid + hi * dir, p, q});
    }
  }
  return edges;
}

double distance_to_skeleton(const std::vector<SkeletonEdge>& edges, const Point& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges) {
    const Point ab = e.b - e.a;
    const double len2 = squared_norm(ab);
    const double t = len2 > 0 ? std::clamp(dot(x - e.a, ab) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, distance(e.a + t * ab, x));
  }
  return best;
}

double total_length(const std::vector<SkeletonEdge>& edges) {
  double s = 0.0;
  for (const auto& e : edges) s += e.length();
  return s;
}

}  // namespace medial
