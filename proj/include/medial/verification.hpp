#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "medial/convex.hpp"
#include "medial/cover.hpp"
#include "medial/grid_kernels.hpp"
#include "medial/point.hpp"
#include "medial/set_geometry.hpp"

namespace medial {

/// Ambiguous grid nodes (node order) followed by located edge crossings
/// (edge order). Requires at least 8 cells per axis.
std::vector<Point> detect_ambiguous(const ClosedSet& set, const Grid& grid, const ScanOptions& opts = {});
std::vector<Point> ambiguous_points(const GridScan& scan, const Grid& grid);

/// Fraction of grid cells touching the ambiguous locus: a corner node is
/// ambiguous or a boundary edge carries a located crossing.
double ambiguous_cell_fraction(const GridScan& scan, const Grid& grid);

struct CertifyOptions {
  ScanOptions scan;
  Lattice lattice;
  WitnessOptions witness;
  MarginalOptions marginal;
  double tolerance = 1e-6;
  /// Test hook forwarded to every cover graph (see CcGraph).
  double graph_offset = 0.0;
};

struct SampleRecord {
  Point point;
  std::optional<NondiffWitness> witness;
  double deviation = 0.0;
  bool covered = false;
};

struct CoverageReport {
  std::size_t samples = 0;
  std::size_t resolved = 0;
  /// Samples without a lattice witness (derivative gap below 2 delta).
  std::size_t unresolved = 0;
  std::size_t covered = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t graphs_built = 0;
  std::vector<SampleRecord> records;
  /// covered == resolved and max_deviation <= tolerance.
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Covers each sample with the graph named by its witness on the
/// strongified Asplund field of E.
CoverageReport certify_samples(const ClosedSet& set, const std::vector<Point>& samples, const CertifyOptions& opts);
CoverageReport certify_samples_serial(const ClosedSet& set, const std::vector<Point>& samples,
                                      const CertifyOptions& opts);

/// detect_ambiguous followed by certify_samples.
CoverageReport certify_cover(const ClosedSet& set, const Grid& grid, const CertifyOptions& opts = {});

struct MeasureEstimate {
  std::size_t dimension = 0;
  std::vector<double> sizes;
  /// Occupied boxes per size, averaged over grid orientations.
  std::vector<double> counts;
  /// counts * size^dimension / Crofton constant.
  std::vector<double> proxies;
  double estimate = 0.0;
  /// Proxy at the finest size is at most 1.2x the next coarser one.
  bool finite = false;
  std::size_t orientations = 0;

  nlohmann::json to_json() const;
};

/// Box-counting proxy for the (n-1)-dimensional measure of a sampled set.
/// Box grids share one absolute offset so they nest across sizes, and are
/// averaged over several rotations; dividing by n E|u_1| (4/pi in the plane)
/// turns the mean box count into a length/area estimate.
MeasureEstimate estimate_measure(const std::vector<Point>& points, const Window& window,
                                 const std::vector<double>& sizes, std::size_t orientations = 16);

/// Halving sweep from extent/4 down to the last size >= 8 grid spacings;
/// finer boxes start to fall between neighbouring samples.
std::vector<double> default_box_sizes(const Grid& grid);

}  // namespace medial
