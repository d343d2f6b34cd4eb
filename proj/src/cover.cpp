#include "medial/cover.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace medial {

CcGraph::CcGraph(std::shared_ptr<const ScalarField> base, std::size_t axis, double alpha, double beta,
                 MarginalOptions marginal, double evaluator_offset)
    : base_(std::move(base)),
      axis_(axis),
      alpha_(alpha),
      beta_(beta),
      marginal_(marginal),
      offset_(evaluator_offset),
      cache_(std::make_unique<Cache>()) {
  if (!(alpha < beta)) throw std::invalid_argument("cover graph needs alpha < beta");
  if (axis >= base_->dim) throw std::invalid_argument("cover graph axis out of range");
}

std::size_t CcGraph::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : k.c) {
    h ^= std::bit_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

double CcGraph::g_alpha(const Point& x_rest) const { return marginal_inf(*base_, axis_, alpha_, x_rest, marginal_); }

double CcGraph::g_beta(const Point& x_rest) const { return marginal_inf(*base_, axis_, beta_, x_rest, marginal_); }

double CcGraph::operator()(const Point& x_rest) const {
  Key key{};
  std::copy(x_rest.begin(), x_rest.end(), key.c.begin());
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  const double v = (g_alpha(x_rest) - g_beta(x_rest)) / (beta_ - alpha_) + offset_;
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(key, v);
  return v;
}

std::size_t CcGraph::cache_size() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->values.size();
}

CcGraph build_cover_graph(std::shared_ptr<const ScalarField> base, std::size_t axis, double alpha, double beta,
                          const MarginalOptions& marginal) {
  return CcGraph(std::move(base), axis, alpha, beta, marginal);
}

std::size_t cover_family_size(std::size_t num_axes, const Lattice& lattice) {
  const std::size_t l = lattice.size();
  return num_axes * (l * (l - 1) / 2);
}

CoverFamily enumerate_cover(std::shared_ptr<const ScalarField> base, const std::vector<std::size_t>& axes,
                            const Lattice& lattice, std::size_t cap, const MarginalOptions& marginal) {
  const std::size_t count = cover_family_size(axes.size(), lattice);
  if (count > cap) {
    throw FamilyBudgetError("family budget exceeded: " + std::to_string(count) + " graphs requested, cap " +
                            std::to_string(cap));
  }
  CoverFamily fam;
  fam.provenance = base->tag;
  fam.graphs.reserve(count);
  const std::int64_t kmax = lattice.max_index();
  for (std::size_t axis : axes) {
    for (std::int64_t ka = -kmax; ka <= kmax; ++ka) {
      for (std::int64_t kb = ka + 1; kb <= kmax; ++kb) {
        fam.graphs.emplace_back(base, axis, lattice.value(ka), lattice.value(kb), marginal);
      }
    }
  }
  return fam;
}

double graph_deviation(const CcGraph& graph, const Point& x) {
  return std::abs(x[graph.axis()] - graph(x.drop(graph.axis())));
}

FamilyDeviation family_deviation(const CoverFamily& family, const Point& x) {
  if (family.graphs.empty()) throw std::invalid_argument("family_deviation on an empty family");
  FamilyDeviation best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t k = 0; k < family.graphs.size(); ++k) {
    const double d = graph_deviation(family.graphs[k], x);
    if (d < best.deviation) best = {d, k};
  }
  return best;
}

GraphRegistry::GraphRegistry(std::shared_ptr<const ScalarField> base, Lattice lattice, MarginalOptions marginal,
                             double evaluator_offset)
    : base_(std::move(base)), lattice_(lattice), marginal_(marginal), offset_(evaluator_offset) {}

const CcGraph& GraphRegistry::get(std::size_t axis, std::int64_t alpha_index, std::int64_t beta_index) {
  std::lock_guard lock(mutex_);
  auto& slot = graphs_[{axis, alpha_index, beta_index}];
  if (!slot) {
    slot = std::make_unique<CcGraph>(base_, axis, lattice_.value(alpha_index), lattice_.value(beta_index),
                                     marginal_, offset_);
  }
  return *slot;
}

std::size_t GraphRegistry::size() const {
  std::lock_guard lock(mutex_);
  return graphs_.size();
}

nlohmann::json export_graph(const CcGraph& graph, const Window& window, std::size_t cells) {
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t axis = graph.axis();
  if (window.dim() == 1) {
    rows.push_back({graph(Point(0))});
  } else {
    const Grid rest(Window(window.lower.drop(axis), window.upper.drop(axis)), cells);
    for (std::size_t k = 0; k < rest.node_count(); ++k) {
      const Point xr = rest.node(k);
      nlohmann::json row(std::vector<double>(xr.begin(), xr.end()));
      row.push_back(graph(xr));
      rows.push_back(std::move(row));
    }
  }
  return {{"axis", axis}, {"alpha", graph.alpha()}, {"beta", graph.beta()}, {"grid", rows}};
}

}  // namespace medial
