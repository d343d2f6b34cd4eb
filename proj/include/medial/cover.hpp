#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "medial/convex.hpp"
#include "medial/point.hpp"

namespace medial {

/// Graph {x : x_axis = g(x_rest)} with
///   g = (g_alpha - g_beta) / (beta - alpha),
/// g_s the marginal infimum of F - s x_axis. F must be strongly convex. Every
/// point where F has one-sided axis slopes bracketing [alpha, beta] lies on it.
class CcGraph {
 public:
  /// `evaluator_offset` shifts every value; it exists only so tests can feed a
  /// deliberately wrong graph through the verification pipeline.
  CcGraph(std::shared_ptr<const ScalarField> base, std::size_t axis, double alpha, double beta,
          MarginalOptions marginal = {}, double evaluator_offset = 0.0);

  std::size_t axis() const { return axis_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const ScalarField& base() const { return *base_; }

  /// Memoized per x_rest; safe to call concurrently.
  double operator()(const Point& x_rest) const;
  double g_alpha(const Point& x_rest) const;
  double g_beta(const Point& x_rest) const;

  std::size_t cache_size() const;

 private:
  struct Key {
    std::array<double, Point::kMaxDim> c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  struct Cache {
    mutable std::mutex mutex;
    std::unordered_map<Key, double, KeyHash> values;
  };

  std::shared_ptr<const ScalarField> base_;
  std::size_t axis_;
  double alpha_;
  double beta_;
  MarginalOptions marginal_;
  double offset_;
  std::unique_ptr<Cache> cache_;
};

CcGraph build_cover_graph(std::shared_ptr<const ScalarField> base, std::size_t axis, double alpha, double beta,
                          const MarginalOptions& marginal = {});

struct CoverFamily {
  std::vector<CcGraph> graphs;
  std::string provenance;
};

class FamilyBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t cover_family_size(std::size_t num_axes, const Lattice& lattice);

/// One graph per (axis, alpha < beta) on the lattice, axis-major, then alpha
/// ascending, then beta ascending. Throws FamilyBudgetError above `cap`.
CoverFamily enumerate_cover(std::shared_ptr<const ScalarField> base, const std::vector<std::size_t>& axes,
                            const Lattice& lattice, std::size_t cap, const MarginalOptions& marginal = {});

/// |x_axis - g(x_rest)|
double graph_deviation(const CcGraph& graph, const Point& x);

struct FamilyDeviation {
  double deviation = 0.0;
  std::size_t graph = 0;
};

/// Minimum over the family; ties go to the earliest graph.
FamilyDeviation family_deviation(const CoverFamily& family, const Point& x);

/// Lazily built graphs keyed by (axis, alpha index, beta index). References
/// returned by get() stay valid for the registry's lifetime.
class GraphRegistry {
 public:
  GraphRegistry(std::shared_ptr<const ScalarField> base, Lattice lattice, MarginalOptions marginal = {},
                double evaluator_offset = 0.0);

  const CcGraph& get(std::size_t axis, std::int64_t alpha_index, std::int64_t beta_index);
  std::size_t size() const;

 private:
  std::shared_ptr<const ScalarField> base_;
  Lattice lattice_;
  MarginalOptions marginal_;
  double offset_;
  mutable std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::int64_t, std::int64_t>, std::unique_ptr<CcGraph>> graphs_;
};

/// {axis, alpha, beta, grid: [[x_rest..., g], ...]} over `window` with the
/// graph axis removed, `cells` intervals per remaining axis.
nlohmann::json export_graph(const CcGraph& graph, const Window& window, std::size_t cells);

}  // namespace medial
