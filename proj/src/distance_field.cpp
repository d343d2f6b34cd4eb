#include "medial/distance_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace medial {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::InE:
      return "in_set";
    case Classification::Unique:
      return "unique";
    case Classification::Ambiguous:
      return "ambiguous";
  }
  return "?";
}

double distance_to(const ClosedSet& set, const Point& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : set.primitives()) best = std::min(best, primitive_distance(p, x));
  return best;
}

NearestResult nearest_points(const ClosedSet& set, const Point& x, const FieldOptions& opts) {
  struct Tagged {
    NearestCandidate c;
    std::size_t primitive;
    bool infinite;
  };
  std::vector<Tagged> all;
  double best = std::numeric_limits<double>::infinity();
  const auto& prims = set.primitives();
  for (std::size_t k = 0; k < prims.size(); ++k) {
    auto pn = primitive_nearest(prims[k], x, opts.tie_tolerance);
    for (auto& c : pn.candidates) {
      best = std::min(best, c.distance);
      all.push_back({std::move(c), k, pn.infinite});
    }
  }

  NearestResult r;
  r.distance = best;
  r.tie_tolerance = opts.tie_tolerance;
  bool have_identity = false;
  for (const auto& t : all) {
    if (t.c.distance - best > opts.tie_tolerance) continue;
    if (!have_identity && t.c.distance == best) {
      r.identity = {t.primitive, t.c.feature};
      have_identity = true;
    }
    r.infinite = r.infinite || t.infinite;
    const bool dup = std::any_of(r.nearest.begin(), r.nearest.end(),
                                 [&](const Point& y) { return distance(y, t.c.point) <= opts.separation; });
    if (!dup) r.nearest.push_back(t.c.point);
  }

  if (best <= opts.tie_tolerance) {
    r.classification = Classification::InE;
    r.nearest.resize(1);
    r.infinite = false;
  } else if (r.infinite || r.nearest.size() >= 2) {
    r.classification = Classification::Ambiguous;
  } else {
    r.classification = Classification::Unique;
  }
  return r;
}

GradientEstimate grad_distance_fd(const ClosedSet& set, const Point& x, const FieldOptions& opts) {
  const double d0 = distance_to(set, x);
  if (d0 <= opts.tie_tolerance) throw PointInSetError("distance gradient requested at a point of E");
  const double h = opts.step;
  const std::size_t n = x.size();

  GradientEstimate g;
  g.vector = Point(n);
  g.step = h;
  bool agree = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = Point::basis(n, i);
    const double fp = distance_to(set, x + h * e);
    const double fm = distance_to(set, x - h * e);
    const double fp2 = distance_to(set, x + (h / 2) * e);
    const double fm2 = distance_to(set, x - (h / 2) * e);
    const double forward = (fp - d0) / h;
    const double backward = (d0 - fm) / h;
    const double central = (fp - fm) / (2 * h);
    const double central_half = (fp2 - fm2) / h;
    const double one_sided_gap = std::abs(forward - backward);
    const double richardson_gap = std::abs(central - central_half);
    g.agreement_residual = std::max({g.agreement_residual, one_sided_gap, richardson_gap});
    agree = agree && one_sided_gap <= 10 * h && richardson_gap <= 10 * h;
    g.vector[i] = central;
  }
  g.differentiable = agree && norm(g.vector) <= 1.0 + 10 * h;
  return g;
}

Point reconstruct_nearest(const ClosedSet& set, const Point& x, const FieldOptions& opts) {
  const auto g = grad_distance_fd(set, x, opts);
  if (!g.differentiable) throw NotDifferentiableError("distance is not differentiable at the query point");
  return x - distance_to(set, x) * g.vector;
}

}  // namespace medial
