#include "medial/convex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "medial/distance_field.hpp"

namespace medial {

ScalarField asplund_field(std::shared_ptr<const ClosedSet> set) {
  const std::size_t n = set->dimension();
  return {[set = std::move(set)](const Point& x) {
            const double d = distance_to(*set, x);
            return squared_norm(x) - d * d;
          },
          n, "asplund", false};
}

ScalarField asplund_field(const ClosedSet& set) { return asplund_field(std::make_shared<const ClosedSet>(set)); }

ScalarField strongify(ScalarField f) {
  ScalarField out;
  out.dim = f.dim;
  out.tag = "strongified(" + f.tag + ")";
  out.c2 = f.c2;
  out.eval = [base = std::move(f.eval)](const Point& x) { return base(x) + squared_norm(x); };
  return out;
}

OneSidedGradient one_sided_partials(const ScalarField& f, const Point& x, std::size_t axis, double step) {
  const double f0 = f(x);
  const Point e = Point::basis(x.size(), axis);
  auto secant = [&](double t) { return (f(x + t * e) - f0) / t; };

  std::array<double, 3> right{}, left{};
  const std::array<double, 3> ts{step / 4, step / 2, step};
  for (std::size_t k = 0; k < 3; ++k) {
    right[k] = secant(ts[k]);
    left[k] = secant(-ts[k]);
  }
  // Two Richardson levels on s(t) = L + a t + b t^2.
  double plus = (8 * right[0] - 6 * right[1] + right[2]) / 3;
  double minus = (8 * left[0] - 6 * left[1] + left[2]) / 3;
  // For convex f: s(-h/4) <= d-f <= d+f <= s(h/4).
  if (left[0] <= right[0]) {
    plus = std::clamp(plus, left[0], right[0]);
    minus = std::clamp(minus, left[0], right[0]);
  }
  return {axis, minus, plus, step};
}

std::int64_t Lattice::max_index() const {
  return static_cast<std::int64_t>(std::floor(bound / delta + 1e-9));
}

std::optional<NondiffWitness> nondiff_witness(const ScalarField& f, const Point& x, const Lattice& lattice,
                                              const WitnessOptions& opts) {
  const std::int64_t kmax = lattice.max_index();
  for (std::size_t axis = 0; axis < x.size(); ++axis) {
    const auto g = one_sided_partials(f, x, axis, opts.step);
    if (g.plus - g.minus < 2 * lattice.delta) continue;
    const double lo = g.minus + opts.margin;
    const double hi = g.plus - opts.margin;
    const auto ka = std::max(static_cast<std::int64_t>(std::ceil(lo / lattice.delta)), -kmax);
    const auto kb = std::min(static_cast<std::int64_t>(std::floor(hi / lattice.delta)), kmax);
    if (kb - ka < 1) continue;
    return NondiffWitness{axis, ka, kb, lattice.value(ka), lattice.value(kb)};
  }
  return std::nullopt;
}

SubgradientBox subgradient_box(const ScalarField& f, const Point& x, double step) {
  SubgradientBox box;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto g = one_sided_partials(f, x, i, step);
    box.intervals.push_back({g.minus, g.plus});
  }
  return box;
}

MarginalResult marginal_minimize(const ScalarField& f, std::size_t axis, double s, const Point& x_rest,
                                 const MarginalOptions& opts) {
  MarginalResult best{std::numeric_limits<double>::infinity(), opts.start};
  auto phi = [&](double t) {
    const double v = f(x_rest.insert(axis, t)) - s * t;
    if (!std::isfinite(v)) throw BracketError("marginal objective is not finite");
    if (v < best.value) best = {v, t};
    return v;
  };

  // Expand until the middle value is below both ends.
  double step = opts.initial_step;
  double a = opts.start - step, b = opts.start, c = opts.start + step;
  double fa = phi(a), fb = phi(b), fc = phi(c);
  while (fa < fb || fc < fb) {
    step *= 2;
    if (step > opts.bracket_limit) {
      throw BracketError("bracket expansion exceeded " + std::to_string(opts.bracket_limit) +
                         "; slice is not coercive");
    }
    if (fa < fb) {
      c = b, fc = fb;
      b = a, fb = fa;
      a = b - step, fa = phi(a);
    } else {
      a = b, fa = fb;
      b = c, fb = fc;
      c = b + step, fc = phi(c);
    }
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = phi(x1), f2 = phi(x2);
  for (int it = 0; it < 400; ++it) {
    if (c - a <= opts.x_tolerance * std::max(1.0, std::abs(0.5 * (a + c)))) break;
    if (f1 <= f2) {
      c = x2;
      x2 = x1, f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = phi(x1);
    } else {
      a = x1;
      x1 = x2, f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = phi(x2);
    }
  }
  phi(0.5 * (a + c));
  return best;
}

double marginal_inf(const ScalarField& f, std::size_t axis, double s, const Point& x_rest,
                    const MarginalOptions& opts) {
  return marginal_minimize(f, axis, s, x_rest, opts).value;
}

Point sample_region(const Region& region, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (const auto* w = std::get_if<Window>(&region)) {
    Point x(w->dim());
    for (std::size_t i = 0; i < w->dim(); ++i) x[i] = w->lower[i] + u(rng) * (w->upper[i] - w->lower[i]);
    return x;
  }
  const auto& ball = std::get<BallRegion>(region);
  const std::size_t n = ball.center.size();
  // Rejection from the bounding cube.
  for (;;) {
    Point v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 2 * u(rng) - 1;
    if (squared_norm(v) <= 1.0) return ball.center + ball.radius * v;
  }
}

namespace {

ProbeReport run_probe(const ScalarField& f, const Region& region, std::size_t num_samples, std::uint64_t seed,
                      double mu) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ProbeReport r;
  r.samples = num_samples;
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < num_samples; ++k) {
    const Point x = sample_region(region, rng);
    const Point y = sample_region(region, rng);
    const double lam = u(rng);
    const double fx = f(x), fy = f(y);
    const double fm = f(lam * x + (1 - lam) * y);
    const double slack = mu * lam * (1 - lam) * squared_norm(x - y);
    r.max_violation = std::max(r.max_violation, fm - lam * fx - (1 - lam) * fy + slack);
    r.scale = std::max({r.scale, std::abs(fx), std::abs(fy), std::abs(fm)});
  }
  r.tolerance = 1e-9 * (1 + r.scale);
  r.pass = r.max_violation <= r.tolerance;
  return r;
}

}  // namespace

ProbeReport convexity_probe(const ScalarField& f, const Region& region, std::size_t num_samples,
                            std::uint64_t seed) {
  return run_probe(f, region, num_samples, seed, 0.0);
}

ProbeReport strong_convexity_probe(const ScalarField& f, const Region& region, std::size_t num_samples,
                                   std::uint64_t seed, double mu) {
  return run_probe(f, region, num_samples, seed, mu);
}

double smooth_cutoff(const Point& x, double radius) {
  const double r = norm(x);
  if (r <= radius) return 1.0;
  if (r >= 2 * radius) return 0.0;
  const double t = (r - radius) / radius;
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

CcDecomposition cc_decompose_c2(const ScalarField& f, double radius, const HessianProbeOptions& opts) {
  if (!(radius > 0.0)) throw DecompositionError("radius must be positive");
  if (!f.c2) throw DecompositionError("field '" + f.tag + "' has no C2 evaluator");
  const std::size_t n = f.dim;
  auto base = f.eval;
  auto phif = [base, radius](const Point& x) {
    const double phi = smooth_cutoff(x, radius);
    return phi == 0.0 ? 0.0 : phi * base(x);
  };

  std::size_t per_axis = opts.nodes_per_axis;
  if (per_axis == 0) per_axis = n == 1 ? 401 : (n == 2 ? 81 : 25);
  const Grid grid(Window::centered(n, 2 * radius), per_axis - 1);
  const double h = opts.fd_step * std::max(1.0, radius);

  double bound = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const Point x = grid.node(k);
    const double f0 = phif(x);
    std::array<std::array<double, Point::kMaxDim>, Point::kMaxDim> hess{};
    for (std::size_t i = 0; i < n; ++i) {
      const Point ei = h * Point::basis(n, i);
      hess[i][i] = (phif(x + ei) - 2 * f0 + phif(x - ei)) / (h * h);
      for (std::size_t j = 0; j < i; ++j) {
        const Point ej = h * Point::basis(n, j);
        const double v =
            (phif(x + ei + ej) - phif(x + ei - ej) - phif(x - ei + ej) + phif(x - ei - ej)) / (4 * h * h);
        hess[i][j] = hess[j][i] = v;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(hess[i][j])) throw DecompositionError("non-finite second difference");
        row += std::abs(hess[i][j]);
      }
      bound = std::max(bound, row);
    }
  }

  CcDecomposition out;
  out.radius = radius;
  out.hessian_bound = bound;
  out.c_r = 0.5 * bound * opts.safety;
  const double c = out.c_r;
  out.g = {[phif, c](const Point& x) { return phif(x) + c * squared_norm(x); }, n, "cc_g(" + f.tag + ")", true};
  out.h = {[c](const Point& x) { return c * squared_norm(x); }, n, "cc_h(" + f.tag + ")", true};
  return out;
}

}  // namespace medial
