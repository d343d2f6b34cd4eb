#include "medial/set_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace medial {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

struct SegmentFoot {
  Point point;
  double t;
};

SegmentFoot segment_foot(const Point& a, const Point& b, const Point& x) {
  const Point ab = b - a;
  double t = dot(x - a, ab) / squared_norm(ab);
  t = std::clamp(t, 0.0, 1.0);
  return {a + t * ab, t};
}

std::size_t segment_feature(double t) { return t <= 0.0 ? 0 : (t >= 1.0 ? 2 : 1); }

Point read_point(const nlohmann::json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) throw SetFormatError("field '" + field + "' must be a coordinate array");
  if (j.size() != dim) {
    throw SetFormatError("field '" + field + "' has " + std::to_string(j.size()) +
                         " coordinates, expected " + std::to_string(dim));
  }
  Point p(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!j[i].is_number()) throw SetFormatError("field '" + field + "' holds a non-numeric coordinate");
    p[i] = j[i].get<double>();
  }
  return p;
}

const nlohmann::json& require(const nlohmann::json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SetFormatError("missing field '" + key + "'");
  return *it;
}

nlohmann::json point_json(const Point& p) { return nlohmann::json(std::vector<double>(p.begin(), p.end())); }

void validate(const Primitive& prim, std::size_t dim) {
  auto check = [dim](const Point& p, const char* what) {
    if (p.size() != dim) throw SetFormatError(std::string(what) + " has wrong dimension");
    if (!p.finite()) throw SetFormatError(std::string(what) + " has non-finite coordinates");
  };
  std::visit(overloaded{
                 [&](const SitePoint& s) { check(s.at, "point"); },
                 [&](const Segment& s) {
                   check(s.a, "segment endpoint");
                   check(s.b, "segment endpoint");
                   if (s.a == s.b) throw SetFormatError("segment endpoints coincide");
                 },
                 [&](const PolygonBoundary& poly) {
                   if (poly.vertices.size() < 3) throw SetFormatError("polygon needs at least 3 vertices");
                   for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
                     check(poly.vertices[i], "polygon vertex");
                     for (std::size_t j = 0; j < i; ++j) {
                       if (poly.vertices[i] == poly.vertices[j]) throw SetFormatError("polygon repeats a vertex");
                     }
                   }
                 },
                 [&](const Ball& b) {
                   check(b.center, "ball center");
                   if (!std::isfinite(b.radius) || b.radius < 0.0) {
                     throw SetFormatError("ball radius must be finite and >= 0");
                   }
                 },
             },
             prim);
}

}  // namespace

double primitive_distance(const Primitive& p, const Point& x) {
  return std::visit(overloaded{
                        [&](const SitePoint& s) { return distance(s.at, x); },
                        [&](const Segment& s) { return distance(segment_foot(s.a, s.b, x).point, x); },
                        [&](const PolygonBoundary& poly) {
                          double best = std::numeric_limits<double>::infinity();
                          const auto& v = poly.vertices;
                          for (std::size_t k = 0; k < v.size(); ++k) {
                            const auto foot = segment_foot(v[k], v[(k + 1) % v.size()], x);
                            best = std::min(best, distance(foot.point, x));
                          }
                          return best;
                        },
                        [&](const Ball& b) {
                          const double r0 = distance(x, b.center);
                          return b.solid ? std::max(r0 - b.radius, 0.0) : std::abs(r0 - b.radius);
                        },
                    },
                    p);
}

PrimitiveNearest primitive_nearest(const Primitive& p, const Point& x, double tie_tolerance) {
  PrimitiveNearest out;
  std::visit(overloaded{
                 [&](const SitePoint& s) { out.candidates.push_back({s.at, distance(s.at, x), 0}); },
                 [&](const Segment& s) {
                   const auto foot = segment_foot(s.a, s.b, x);
                   out.candidates.push_back({foot.point, distance(foot.point, x), segment_feature(foot.t)});
                 },
                 [&](const PolygonBoundary& poly) {
                   const auto& v = poly.vertices;
                   const std::size_t m = v.size();
                   std::vector<NearestCandidate> all;
                   all.reserve(m);
                   double best = std::numeric_limits<double>::infinity();
                   for (std::size_t k = 0; k < m; ++k) {
                     const auto foot = segment_foot(v[k], v[(k + 1) % m], x);
                     std::size_t feature = 2 * k + 1;
                     if (foot.t <= 0.0) feature = 2 * k;
                     if (foot.t >= 1.0) feature = 2 * ((k + 1) % m);
                     const double d = distance(foot.point, x);
                     best = std::min(best, d);
                     all.push_back({foot.point, d, feature});
                   }
                   for (const auto& c : all) {
                     if (c.distance - best > tie_tolerance) continue;
                     const bool seen = std::any_of(out.candidates.begin(), out.candidates.end(),
                                                   [&](const NearestCandidate& o) { return o.feature == c.feature; });
                     if (!seen) out.candidates.push_back(c);
                   }
                 },
                 [&](const Ball& b) {
                   const Point v = x - b.center;
                   const double r0 = norm(v);
                   if (b.radius == 0.0) {
                     out.candidates.push_back({b.center, r0, 0});
                   } else if (b.solid && r0 <= b.radius) {
                     out.candidates.push_back({x, 0.0, 0});
                   } else if (r0 == 0.0) {
                     // Every point of the sphere is nearest; report one witness.
                     out.infinite = true;
                     out.candidates.push_back({b.center + b.radius * Point::basis(x.size(), 0), b.radius, 0});
                   } else {
                     const Point y = b.center + (b.radius / r0) * v;
                     out.candidates.push_back({y, std::abs(r0 - b.radius), 0});
                   }
                 },
             },
             p);
  return out;
}

std::size_t primitive_dimension(const Primitive& p) {
  return std::visit(overloaded{
                        [](const SitePoint& s) { return s.at.size(); },
                        [](const Segment& s) { return s.a.size(); },
                        [](const PolygonBoundary& poly) { return poly.vertices.front().size(); },
                        [](const Ball& b) { return b.center.size(); },
                    },
                    p);
}

ClosedSet::ClosedSet(std::size_t dimension, std::vector<Primitive> primitives)
    : dim_(dimension), primitives_(std::move(primitives)) {
  if (dim_ < 1 || dim_ > 3) throw SetFormatError("dimension must be 1, 2 or 3");
  if (primitives_.empty()) throw SetFormatError("closed set must have at least one primitive");
  for (const auto& p : primitives_) validate(p, dim_);
}

ClosedSet ClosedSet::points(const std::vector<Point>& sites) {
  if (sites.empty()) throw SetFormatError("closed set must have at least one primitive");
  std::vector<Primitive> prims;
  prims.reserve(sites.size());
  for (const auto& s : sites) prims.emplace_back(SitePoint{s});
  return ClosedSet(sites.front().size(), std::move(prims));
}

ClosedSet ClosedSet::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SetFormatError("set description must be a JSON object");
  const auto& jdim = require(doc, "dimension");
  if (!jdim.is_number_integer()) throw SetFormatError("field 'dimension' must be an integer");
  const auto dim = jdim.get<long long>();
  if (dim < 1 || dim > 3) throw SetFormatError("field 'dimension' must be 1, 2 or 3");
  const auto n = static_cast<std::size_t>(dim);

  const auto& jprims = require(doc, "primitives");
  if (!jprims.is_array()) throw SetFormatError("field 'primitives' must be an array");
  std::vector<Primitive> prims;
  for (const auto& jp : jprims) {
    const auto& jtype = require(jp, "type");
    if (!jtype.is_string()) throw SetFormatError("field 'type' must be a string");
    const auto type = jtype.get<std::string>();
    if (type == "point") {
      prims.emplace_back(SitePoint{read_point(require(jp, "coords"), n, "coords")});
    } else if (type == "segment") {
      prims.emplace_back(Segment{read_point(require(jp, "a"), n, "a"), read_point(require(jp, "b"), n, "b")});
    } else if (type == "polygon") {
      const auto& jv = require(jp, "vertices");
      if (!jv.is_array()) throw SetFormatError("field 'vertices' must be an array");
      PolygonBoundary poly;
      for (const auto& v : jv) poly.vertices.push_back(read_point(v, n, "vertices"));
      prims.emplace_back(std::move(poly));
    } else if (type == "ball") {
      Ball b;
      b.center = read_point(require(jp, "center"), n, "center");
      const auto& jr = require(jp, "radius");
      if (!jr.is_number()) throw SetFormatError("field 'radius' must be a number");
      b.radius = jr.get<double>();
      if (auto it = jp.find("solid"); it != jp.end()) {
        if (!it->is_boolean()) throw SetFormatError("field 'solid' must be a boolean");
        b.solid = it->get<bool>();
      }
      prims.emplace_back(b);
    } else {
      throw SetFormatError("unknown primitive type '" + type +
                           "' (expected point, segment, polygon or ball)");
    }
  }
  return ClosedSet(n, std::move(prims));
}

ClosedSet ClosedSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open set file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SetFormatError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json ClosedSet::to_json() const {
  nlohmann::json prims = nlohmann::json::array();
  for (const auto& p : primitives_) {
    prims.push_back(std::visit(
        overloaded{
            [](const SitePoint& s) { return nlohmann::json{{"type", "point"}, {"coords", point_json(s.at)}}; },
            [](const Segment& s) {
              return nlohmann::json{{"type", "segment"}, {"a", point_json(s.a)}, {"b", point_json(s.b)}};
            },
            [](const PolygonBoundary& poly) {
              nlohmann::json v = nlohmann::json::array();
              for (const auto& q : poly.vertices) v.push_back(point_json(q));
              return nlohmann::json{{"type", "polygon"}, {"vertices", v}};
            },
            [](const Ball& b) {
              nlohmann::json j{{"type", "ball"}, {"center", point_json(b.center)}, {"radius", b.radius}};
              if (b.solid) j["solid"] = true;
              return j;
            },
        },
        p));
  }
  return {{"dimension", dim_}, {"primitives", prims}};
}

}  // namespace medial
