#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "medial/point.hpp"
#include "medial/set_geometry.hpp"

namespace medial {

/// Real-valued function on R^n. `c2` marks evaluators known to be twice
/// continuously differentiable.
struct ScalarField {
  std::function<double(const Point&)> eval;
  std::size_t dim = 0;
  std::string tag;
  bool c2 = false;

  double operator()(const Point& x) const { return eval(x); }
};

/// |x|^2 - d(x)^2, convex for every closed E.
ScalarField asplund_field(std::shared_ptr<const ClosedSet> set);
ScalarField asplund_field(const ClosedSet& set);

/// f + |x|^2; strongly convex with modulus 1 whenever f is convex.
ScalarField strongify(ScalarField f);

struct OneSidedGradient {
  std::size_t axis = 0;
  double minus = 0.0;
  double plus = 0.0;
  double step = 0.0;
};

/// Left and right partial derivatives along `axis` from secants at
/// +-h, +-h/2, +-h/4, Richardson-extrapolated to t -> 0 and clamped into the
/// bracket [s(-h/4), s(h/4)] that convexity guarantees.
OneSidedGradient one_sided_partials(const ScalarField& f, const Point& x, std::size_t axis, double step = 1e-5);

/// Rationals {k * delta : |k * delta| <= bound}.
struct Lattice {
  double delta = 0.125;
  double bound = 64.0;

  std::int64_t max_index() const;
  std::size_t size() const { return static_cast<std::size_t>(2 * max_index() + 1); }
  double value(std::int64_t k) const { return static_cast<double>(k) * delta; }
};

/// Axis i and lattice slopes alpha < beta with d-f/dx_i <= alpha < beta <= d+f/dx_i.
struct NondiffWitness {
  std::size_t axis = 0;
  std::int64_t alpha_index = 0;
  std::int64_t beta_index = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct WitnessOptions {
  double step = 1e-5;
  /// Lattice slopes must sit at least this far inside the estimated interval.
  double margin = 1e-4;
};

/// First axis whose one-sided gap is at least 2 * delta, paired with the
/// widest lattice pair inside the gap. Empty when no axis qualifies.
std::optional<NondiffWitness> nondiff_witness(const ScalarField& f, const Point& x, const Lattice& lattice,
                                              const WitnessOptions& opts = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-axis box [d-f, d+f]; an outer approximation of the subdifferential.
struct SubgradientBox {
  std::vector<Interval> intervals;
};

SubgradientBox subgradient_box(const ScalarField& f, const Point& x, double step = 1e-5);

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MarginalOptions {
  double initial_step = 1.0;
  /// Bracket half-width beyond which the slice is declared non-coercive.
  double bracket_limit = 1e6;
  /// Golden-section stops when the bracket is narrower than
  /// x_tolerance * max(1, |center|).
  double x_tolerance = 1e-11;
  double start = 0.0;
};

struct MarginalResult {
  double value = 0.0;
  double argmin = 0.0;
};

/// inf over x_i of f(x) - s * x_i with the other coordinates fixed to x_rest.
MarginalResult marginal_minimize(const ScalarField& f, std::size_t axis, double s, const Point& x_rest,
                                 const MarginalOptions& opts = {});
double marginal_inf(const ScalarField& f, std::size_t axis, double s, const Point& x_rest,
                    const MarginalOptions& opts = {});

struct BallRegion {
  Point center;
  double radius = 1.0;
};

using Region = std::variant<Window, BallRegion>;

Point sample_region(const Region& region, std::mt19937_64& rng);

struct ProbeReport {
  std::size_t samples = 0;
  double max_violation = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Max over random (x, y, lambda) of f(lambda x + (1-lambda) y) - lambda f(x) - (1-lambda) f(y).
/// Passes when the max is <= 1e-9 * (1 + max |f|).
ProbeReport convexity_probe(const ScalarField& f, const Region& region, std::size_t num_samples,
                            std::uint64_t seed = 1);

/// Same with the strong-convexity slack mu * lambda (1-lambda) |x-y|^2.
ProbeReport strong_convexity_probe(const ScalarField& f, const Region& region, std::size_t num_samples,
                                   std::uint64_t seed = 1, double mu = 1.0);

/// Radial quintic smoothstep: 1 on |x| <= R, 0 on |x| >= 2R, C^2 throughout.
/// With t = (|x| - R) / R the transition is 1 - t^3 (10 - 15 t + 6 t^2).
double smooth_cutoff(const Point& x, double radius);

struct HessianProbeOptions {
  /// Nodes per axis of the sample grid on [-2R, 2R]^n; 0 picks by dimension.
  std::size_t nodes_per_axis = 0;
  double fd_step = 1e-3;
  double safety = 1.5;
};

struct CcDecomposition {
  ScalarField g;
  ScalarField h;
  double c_r = 0.0;
  /// Largest sampled Gershgorin bound of D^2(phi f).
  double hessian_bound = 0.0;
  double radius = 0.0;
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g = phi f + C_R |x|^2 and h = C_R |x|^2 with C_R = safety * bound / 2, so
/// g - h = f on |x| <= R and D^2 g is positive semidefinite wherever the
/// sampled Hessian bound holds.
CcDecomposition cc_decompose_c2(const ScalarField& f, double radius, const HessianProbeOptions& opts = {});

}  // namespace medial
