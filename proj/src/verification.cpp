#include "medial/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include <omp.h>

namespace medial {

std::vector<Point> ambiguous_points(const GridScan& scan, const Grid& grid) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < scan.nodes.size(); ++k) {
    if (scan.nodes[k].classification == Classification::Ambiguous) out.push_back(grid.node(k));
  }
  for (const auto& h : scan.hits) out.push_back(h.point);
  return out;
}

std::vector<Point> detect_ambiguous(const ClosedSet& set, const Grid& grid, const ScanOptions& opts) {
  if (grid.cells() < 8) throw std::invalid_argument("grid resolution must be at least 8 per axis");
  if (grid.dim() != set.dimension()) throw std::invalid_argument("grid and set dimensions differ");
  return ambiguous_points(scan_grid(set, grid, opts), grid);
}

double ambiguous_cell_fraction(const GridScan& scan, const Grid& grid) {
  const std::size_t n = grid.dim();
  std::vector<char> edge_hit(grid.node_count() * n, 0);
  for (const auto& h : scan.hits) edge_hit[h.node * n + h.axis] = 1;

  std::size_t flagged = 0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const auto idx = grid.unravel(k);
    if (std::any_of(idx.begin(), idx.begin() + n, [&](std::size_t v) { return v == grid.cells(); })) continue;
    bool hit = false;
    for (std::size_t corner = 0; corner < (1u << n) && !hit; ++corner) {
      auto cidx = idx;
      for (std::size_t a = 0; a < n; ++a) cidx[a] += (corner >> a) & 1u;
      const std::size_t c = grid.ravel(cidx);
      hit = scan.nodes[c].classification == Classification::Ambiguous;
      for (std::size_t a = 0; a < n && !hit; ++a) {
        if (((corner >> a) & 1u) == 0) hit = edge_hit[c * n + a] != 0;
      }
    }
    flagged += hit ? 1 : 0;
  }
  return static_cast<double>(flagged) / static_cast<double>(grid.cell_count());
}

namespace {

SampleRecord certify_one(const ScalarField& field, GraphRegistry& registry, const Point& a,
                         const CertifyOptions& opts) {
  SampleRecord rec;
  rec.point = a;
  rec.witness = nondiff_witness(field, a, opts.lattice, opts.witness);
  if (rec.witness) {
    const auto& g = registry.get(rec.witness->axis, rec.witness->alpha_index, rec.witness->beta_index);
    rec.deviation = graph_deviation(g, a);
    rec.covered = rec.deviation <= opts.tolerance;
  }
  return rec;
}

CoverageReport summarize(std::vector<SampleRecord> records, const GraphRegistry& registry,
                         const CertifyOptions& opts) {
  CoverageReport r;
  r.tolerance = opts.tolerance;
  r.samples = records.size();
  for (const auto& rec : records) {
    if (!rec.witness) {
      ++r.unresolved;
      continue;
    }
    ++r.resolved;
    r.covered += rec.covered ? 1 : 0;
    r.max_deviation = std::max(r.max_deviation, rec.deviation);
  }
  r.graphs_built = registry.size();
  r.records = std::move(records);
  r.pass = r.covered == r.resolved && r.max_deviation <= r.tolerance;
  return r;
}

std::shared_ptr<const ScalarField> certification_field(const ClosedSet& set) {
  return std::make_shared<const ScalarField>(strongify(asplund_field(set)));
}

}  // namespace

CoverageReport certify_samples(const ClosedSet& set, const std::vector<Point>& samples, const CertifyOptions& opts) {
  const auto field = certification_field(set);
  GraphRegistry registry(field, opts.lattice, opts.marginal, opts.graph_offset);
  std::vector<SampleRecord> records(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    records[k] = certify_one(*field, registry, samples[k], opts);
  }
  return summarize(std::move(records), registry, opts);
}

CoverageReport certify_samples_serial(const ClosedSet& set, const std::vector<Point>& samples,
                                      const CertifyOptions& opts) {
  const auto field = certification_field(set);
  GraphRegistry registry(field, opts.lattice, opts.marginal, opts.graph_offset);
  std::vector<SampleRecord> records;
  records.reserve(samples.size());
  for (const auto& a : samples) records.push_back(certify_one(*field, registry, a, opts));
  return summarize(std::move(records), registry, opts);
}

CoverageReport certify_cover(const ClosedSet& set, const Grid& grid, const CertifyOptions& opts) {
  return certify_samples(set, detect_ambiguous(set, grid, opts.scan), opts);
}

nlohmann::json CoverageReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"point", std::vector<double>(r.point.begin(), r.point.end())}};
    if (r.witness) {
      j["witness"] = {{"axis", r.witness->axis}, {"alpha", r.witness->alpha}, {"beta", r.witness->beta}};
      j["deviation"] = r.deviation;
      j["covered"] = r.covered;
    } else {
      j["witness"] = nullptr;
      j["status"] = "unresolved";
    }
    recs.push_back(std::move(j));
  }
  return {{"samples", samples},       {"resolved", resolved},     {"unresolved", unresolved},
          {"covered", covered},       {"max_deviation", max_deviation}, {"tolerance", tolerance},
          {"graphs_built", graphs_built}, {"pass", pass},         {"records", recs}};
}

namespace {

using Matrix = std::array<std::array<double, Point::kMaxDim>, Point::kMaxDim>;

std::vector<Matrix> orientation_set(std::size_t n, std::size_t count) {
  std::vector<Matrix> out;
  if (n == 1) {
    Matrix m{};
    m[0][0] = 1.0;
    out.push_back(m);
    return out;
  }
  if (n == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = (static_cast<double>(k) + 0.5) * (std::numbers::pi / 2) / static_cast<double>(count);
      Matrix m{};
      m[0][0] = std::cos(th), m[0][1] = -std::sin(th);
      m[1][0] = std::sin(th), m[1][1] = std::cos(th);
      out.push_back(m);
    }
    return out;
  }
  // Random unit quaternions from a fixed seed.
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t k = 0; k < count; ++k) {
    double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
    const double s = std::sqrt(w * w + x * x + y * y + z * z);
    w /= s, x /= s, y /= s, z /= s;
    Matrix m{};
    m[0] = {1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)};
    m[1] = {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)};
    m[2] = {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)};
    out.push_back(m);
  }
  return out;
}

// n * E|u_1| for u uniform on the unit sphere of R^n.
double crofton_constant(std::size_t n) {
  switch (n) {
    case 1:
      return 1.0;
    case 2:
      return 4.0 / std::numbers::pi;
    default:
      return 1.5;
  }
}

}  // namespace

MeasureEstimate estimate_measure(const std::vector<Point>& points, const Window& window,
                                 const std::vector<double>& sizes, std::size_t orientations) {
  if (sizes.empty()) throw std::invalid_argument("box size sweep is empty");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (!(sizes[k] > 0.0)) throw std::invalid_argument("box sizes must be positive");
    if (k > 0 && !(sizes[k] < sizes[k - 1])) throw std::invalid_argument("box sizes must decrease");
  }
  const std::size_t n = window.dim();
  const auto rotations = orientation_set(n, std::max<std::size_t>(orientations, 1));
  const std::array<double, Point::kMaxDim> offset{0.1234567, 0.3141593, 0.2718282};

  std::vector<Point> inside;
  for (const auto& p : points) {
    if (window.contains(p)) inside.push_back(p);
  }

  MeasureEstimate m;
  m.dimension = n - 1;
  m.sizes = sizes;
  m.orientations = rotations.size();
  for (double eps : sizes) {
    double total = 0.0;
    for (const auto& rot : rotations) {
      std::unordered_set<std::uint64_t> boxes;
      for (const auto& p : inside) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double c = 0.0;
          for (std::size_t j = 0; j < n; ++j) c += rot[i][j] * p[j];
          const auto cell = static_cast<std::int64_t>(std::floor((c - offset[i]) / eps));
          key = key * 2097152u + static_cast<std::uint64_t>(cell + 1048576);
        }
        boxes.insert(key);
      }
      total += static_cast<double>(boxes.size());
    }
    const double count = total / static_cast<double>(rotations.size());
    m.counts.push_back(count);
    m.proxies.push_back(count * std::pow(eps, static_cast<double>(n - 1)) / crofton_constant(n));
  }
  m.estimate = m.proxies.back();
  m.finite = m.proxies.size() < 2 || m.proxies.back() <= 1.2 * m.proxies[m.proxies.size() - 2];
  return m;
}

std::vector<double> default_box_sizes(const Grid& grid) {
  double extent = 0.0, spacing = 0.0;
  for (std::size_t i = 0; i < grid.dim(); ++i) {
    extent = std::max(extent, grid.window().upper[i] - grid.window().lower[i]);
    spacing = std::max(spacing, grid.spacing(i));
  }
  std::vector<double> sizes;
  for (double s = extent / 4; s >= 8 * spacing * (1 - 1e-12); s /= 2) sizes.push_back(s);
  if (sizes.empty()) sizes.push_back(extent / 4);
  return sizes;
}

nlohmann::json MeasureEstimate::to_json() const {
  return {{"dimension", dimension}, {"sizes", sizes},       {"counts", counts},          {"proxies", proxies},
          {"estimate", estimate},   {"finite", finite},     {"orientations", orientations}};
}

}  // namespace medial
