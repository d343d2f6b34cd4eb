#include "medial/grid_kernels.hpp"

#include <ostream>

#include <omp.h>

namespace medial {
namespace {

FieldSample sample_node(const ClosedSet& set, const Point& x, const FieldOptions& opts) {
  FieldSample s;
  s.x = x;
  const auto nr = nearest_points(set, x, opts);
  s.distance = nr.distance;
  s.classification = nr.classification;
  if (nr.classification == Classification::InE) {
    s.gradient.vector = Point(x.size());
    s.gradient.step = opts.step;
  } else {
    s.gradient = grad_distance_fd(set, x, opts);
  }
  return s;
}

NodeState node_state(const ClosedSet& set, const Point& x, const FieldOptions& opts) {
  const auto nr = nearest_points(set, x, opts);
  return {nr.classification, nr.identity, nr.nearest.front()};
}

bool skip_edge(const NodeState& a, const NodeState& b) {
  if (a.classification != Classification::Unique || b.classification != Classification::Unique) return true;
  return a.identity == b.identity;
}

// Crossings for the +axis edges leaving `node`; one slot per axis.
void scan_node_edges(const ClosedSet& set, const Grid& grid, const std::vector<NodeState>& states,
                     std::size_t node, const ScanOptions& opts, std::optional<Point>* slots) {
  const auto idx = grid.unravel(node);
  for (std::size_t axis = 0; axis < grid.dim(); ++axis) {
    if (idx[axis] == grid.cells()) continue;
    const std::size_t next = grid.step(node, axis);
    if (skip_edge(states[node], states[next])) continue;
    slots[axis] = locate_crossing(set, grid.node(node), grid.node(next), opts);
  }
}

GridScan collect(const Grid& grid, std::vector<NodeState> states, const std::vector<std::optional<Point>>& slots) {
  GridScan scan;
  scan.nodes = std::move(states);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k]) scan.hits.push_back({k / grid.dim(), k % grid.dim(), *slots[k]});
  }
  return scan;
}

}  // namespace

std::optional<Point> locate_crossing(const ClosedSet& set, const Point& a, const Point& b, const ScanOptions& opts) {
  Point lo = a, hi = b;
  NodeState slo = node_state(set, lo, opts.field);
  NodeState shi = node_state(set, hi, opts.field);
  while (distance(lo, hi) > opts.localization) {
    const Point mid = 0.5 * (lo + hi);
    const NodeState smid = node_state(set, mid, opts.field);
    if (smid.classification == Classification::Ambiguous) return mid;
    if (smid.classification == Classification::InE) return std::nullopt;
    if (smid.identity == slo.identity) {
      lo = mid;
      slo = smid;
    } else {
      hi = mid;
      shi = smid;
    }
  }
  if (distance(slo.projection, shi.projection) <= opts.field.separation) return std::nullopt;
  return 0.5 * (lo + hi);
}

std::vector<FieldSample> sweep_distance_field(const ClosedSet& set, const Grid& grid, const FieldOptions& opts) {
  const auto count = static_cast<std::ptrdiff_t>(grid.node_count());
  std::vector<FieldSample> out(grid.node_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    out[k] = sample_node(set, grid.node(k), opts);
  }
  return out;
}

std::vector<FieldSample> sweep_distance_field_serial(const ClosedSet& set, const Grid& grid,
                                                     const FieldOptions& opts) {
  std::vector<FieldSample> out;
  out.reserve(grid.node_count());
  for (std::size_t k = 0; k < grid.node_count(); ++k) out.push_back(sample_node(set, grid.node(k), opts));
  return out;
}

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
  const std::size_t n = samples.empty() ? 0 : samples.front().x.size();
  for (std::size_t i = 0; i < n; ++i) out << 'x' << i + 1 << ',';
  out << "d,classification";
  for (std::size_t i = 0; i < n; ++i) out << ",g" << i + 1;
  out << ",differentiable\n";
  const auto old_precision = out.precision(17);
  for (const auto& s : samples) {
    for (double v : s.x) out << v << ',';
    out << s.distance << ',' << to_string(s.classification);
    for (double v : s.gradient.vector) out << ',' << v;
    out << ',' << (s.gradient.differentiable ? "true" : "false") << '\n';
  }
  out.precision(old_precision);
}

GridScan scan_grid(const ClosedSet& set, const Grid& grid, const ScanOptions& opts) {
  const auto count = static_cast<std::ptrdiff_t>(grid.node_count());
  std::vector<NodeState> states(grid.node_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    states[k] = node_state(set, grid.node(k), opts.field);
  }
  std::vector<std::optional<Point>> slots(grid.node_count() * grid.dim());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    scan_node_edges(set, grid, states, k, opts, &slots[k * grid.dim()]);
  }
  return collect(grid, std::move(states), slots);
}

GridScan scan_grid_serial(const ClosedSet& set, const Grid& grid, const ScanOptions& opts) {
  std::vector<NodeState> states;
  states.reserve(grid.node_count());
  for (std::size_t k = 0; k < grid.node_count(); ++k) states.push_back(node_state(set, grid.node(k), opts.field));
  std::vector<std::optional<Point>> slots(grid.node_count() * grid.dim());
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    scan_node_edges(set, grid, states, k, opts, &slots[k * grid.dim()]);
  }
  return collect(grid, std::move(states), slots);
}

}  // namespace medial
