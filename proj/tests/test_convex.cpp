#include <cmath>
#include <random>

#include "doctest.h"
#include "medial/convex.hpp"
#include "medial/distance_field.hpp"
#include "medial/fields.hpp"

using namespace medial;

namespace {

const ClosedSet kTwoPoints = ClosedSet::points({{-1.0, 0.0}, {1.0, 0.0}});

ScalarField analytic(std::function<double(const Point&)> f, std::size_t n, bool c2 = false) {
  return {std::move(f), n, "test", c2};
}

// 2|x1| + |x|^2 - 1: the strongified Asplund field of the two-point set.
const ScalarField kTwoPointF = analytic([](const Point& x) { return 2 * std::abs(x[0]) + squared_norm(x) - 1; }, 2);

// Brute-force 1-D minimisation on a fine uniform grid.
double grid_min(const std::function<double(double)>& phi, double lo, double hi, double step) {
  double best = phi(lo);
  for (double t = lo; t <= hi; t += step) best = std::min(best, phi(t));
  return best;
}

}  // namespace

TEST_CASE("asplund_field closed forms") {
  const auto f = asplund_field(kTwoPoints);
  const auto circle = asplund_field(ClosedSet(2, {Ball{{0.0, 0.0}, 1.0, false}}));
  const auto single = asplund_field(ClosedSet::points({{0.0, 0.0}}));
  const Grid grid(Window::centered(2, 2.0), 40);
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const Point x = grid.node(k);
    CHECK(f(x) == doctest::Approx(2 * std::abs(x[0]) - 1).epsilon(1e-12));
    CHECK(circle(x) == doctest::Approx(2 * norm(x) - 1).epsilon(1e-12));
    CHECK(std::abs(single(x)) <= 1e-14);
  }
}

TEST_CASE("strongify adds |x|^2") {
  const auto zero = strongify(analytic([](const Point&) { return 0.0; }, 2));
  const auto lin = strongify(analytic([](const Point& x) { return 3 * x[0] - x[1]; }, 2));
  const auto two = strongify(asplund_field(kTwoPoints));
  for (const Point& x : {Point{0.3, -1.2}, Point{-1.5, 0.25}, Point{0.0, 0.0}}) {
    CHECK(zero(x) == doctest::Approx(squared_norm(x)));
    CHECK(lin(x) == doctest::Approx(3 * x[0] - x[1] + squared_norm(x)));
    CHECK(two(x) == doctest::Approx(kTwoPointF(x)));
  }
}

TEST_CASE("one_sided_partials examples") {
  auto g = one_sided_partials(analytic([](const Point& x) { return std::abs(x[0]); }, 1), Point{0.0}, 0);
  CHECK(g.minus == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(g.plus == doctest::Approx(1.0).epsilon(1e-9));

  g = one_sided_partials(kTwoPointF, Point{0.0, 0.5}, 0);
  CHECK(g.minus == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(g.plus == doctest::Approx(2.0).epsilon(1e-9));

  g = one_sided_partials(analytic([](const Point& x) { return squared_norm(x); }, 2), Point{1.0, 0.0}, 0);
  CHECK(g.minus == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g.plus == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("nondiff_witness examples") {
  const Lattice coarse{0.5, 4.0};
  auto w = nondiff_witness(kTwoPointF, Point{0.0, 0.5}, coarse);
  REQUIRE(w);
  CHECK(w->axis == 0);
  CHECK(w->alpha == -1.5);
  CHECK(w->beta == 1.5);
  CHECK(w->alpha_index == -3);
  CHECK(w->beta_index == 3);

  CHECK_FALSE(nondiff_witness(analytic([](const Point& x) { return squared_norm(x); }, 2), Point{0.4, -0.9}, {}));
  CHECK_FALSE(nondiff_witness(analytic([](const Point& x) { return std::abs(x[0]); }, 1), Point{0.3}, {}));

  // Gap narrower than 2 delta.
  CHECK_FALSE(nondiff_witness(analytic([](const Point& x) { return 0.1 * std::abs(x[0]); }, 1), Point{0.0}, {}));
  // Lattice bound clips the pair.
  w = nondiff_witness(analytic([](const Point& x) { return 100 * std::abs(x[0]); }, 1), Point{0.0}, Lattice{1.0, 3.0});
  REQUIRE(w);
  CHECK(w->alpha == -3.0);
  CHECK(w->beta == 3.0);
}

TEST_CASE("subgradient_box examples") {
  auto box = subgradient_box(analytic([](const Point& x) { return std::abs(x[0]); }, 1), Point{0.0});
  CHECK(box.intervals[0].lo == doctest::Approx(-1.0));
  CHECK(box.intervals[0].hi == doctest::Approx(1.0));

  box = subgradient_box(analytic([](const Point& x) { return squared_norm(x); }, 2), Point{1.0, 2.0});
  CHECK(box.intervals[0].lo == doctest::Approx(2.0));
  CHECK(box.intervals[0].hi == doctest::Approx(2.0));
  CHECK(box.intervals[1].lo == doctest::Approx(4.0));
  CHECK(box.intervals[1].hi == doctest::Approx(4.0));

  box = subgradient_box(kTwoPointF, Point{0.0, 0.0});
  CHECK(box.intervals[0].lo == doctest::Approx(-2.0));
  CHECK(box.intervals[0].hi == doctest::Approx(2.0));
  CHECK(std::abs(box.intervals[1].lo) <= 1e-9);
  CHECK(std::abs(box.intervals[1].hi) <= 1e-9);
}

TEST_CASE("one-sided order and axis supporting lines on Asplund fields") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < 5; ++s) {
    const ClosedSet set(2, {SitePoint{{u(rng), u(rng)}}, SitePoint{{u(rng), u(rng)}},
                            Segment{{u(rng), u(rng)}, {u(rng), u(rng)}}, Ball{{u(rng), u(rng)}, 0.5, false}});
    const auto f = asplund_field(set);
    for (int k = 0; k < 40; ++k) {
      const Point x{u(rng), u(rng)};
      const auto box = subgradient_box(f, x);
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(box.intervals[i].lo <= box.intervals[i].hi + 1e-8);
        for (int j = 0; j < 100; ++j) {
          const double s_ = box.intervals[i].lo + unit(rng) * (box.intervals[i].hi - box.intervals[i].lo);
          const double t = 4 * (unit(rng) - 0.5);
          CHECK(f(x + t * Point::basis(2, i)) >= f(x) + s_ * t - 1e-8);
        }
      }
    }
  }
}

TEST_CASE("marginal_inf examples against grid minimisation") {
  const Point rest0{0.0};
  double v = marginal_inf(kTwoPointF, 0, 0.0, rest0);
  CHECK(v == doctest::Approx(-1.0).epsilon(1e-10));
  double oracle = grid_min([&](double t) { return kTwoPointF(rest0.insert(0, t)); }, -3, 3, 1e-5);
  CHECK(std::abs(v - oracle) <= 1e-4);

  // |s| <= 2 keeps the minimiser at the kink: g_1(x2) = x2^2 - 1.
  const Point rest{0.5};
  v = marginal_inf(kTwoPointF, 0, 1.0, rest);
  CHECK(v == doctest::Approx(-0.75).epsilon(1e-10));
  oracle = grid_min([&](double t) { return kTwoPointF(rest.insert(0, t)) - t; }, -3, 3, 1e-5);
  CHECK(std::abs(v - oracle) <= 1e-4);

  const auto sq = analytic([](const Point& x) { return squared_norm(x); }, 1);
  const auto r = marginal_minimize(sq, 0, 2.0, Point(0));
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.argmin == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("marginal_inf reports non-coercive slices") {
  const auto f = analytic([](const Point& x) { return std::abs(x[0]); }, 1);
  CHECK_THROWS_AS(marginal_inf(f, 0, 2.0, Point(0)), BracketError);
}

TEST_CASE("marginal infimum is convex in the remaining coordinates") {
  const ClosedSet set = ClosedSet::points({{-1.0, -0.6}, {1.1, -0.4}, {0.2, 1.3}});
  const auto field = strongify(asplund_field(set));
  for (double s : {-1.5, 0.0, 0.75}) {
    const ScalarField g{[&](const Point& xr) { return marginal_inf(field, 0, s, xr); }, 1, "g_s", false};
    const auto report = convexity_probe(g, Window(Point{-2.0}, Point{2.0}), 2000, 5);
    CHECK(report.pass);
  }
}

TEST_CASE("marginal identities at witnessed points") {
  const ClosedSet set = ClosedSet::points({{-1.0, -0.6}, {1.1, -0.4}, {0.2, 1.3}});
  const auto field = strongify(asplund_field(set));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int witnessed = 0;
  for (int k = 0; k < 400 && witnessed < 40; ++k) {
    // Points on the bisector of the first two sites.
    const Point p{-1.0, -0.6}, q{1.1, -0.4};
    const Point a = 0.5 * (p + q) + u(rng) * Point{-(q - p)[1], (q - p)[0]};
    if (nearest_points(set, a).classification != Classification::Ambiguous) continue;
    const auto w = nondiff_witness(field, a, {});
    REQUIRE(w);
    ++witnessed;
    const Point rest = a.drop(w->axis);
    CHECK(std::abs(marginal_inf(field, w->axis, w->alpha, rest) - (field(a) - w->alpha * a[w->axis])) <= 1e-6);
    CHECK(std::abs(marginal_inf(field, w->axis, w->beta, rest) - (field(a) - w->beta * a[w->axis])) <= 1e-6);
  }
  CHECK(witnessed > 10);
}

TEST_CASE("convexity probes") {
  const Window w = Window::centered(2, 2.0);
  const auto sq = analytic([](const Point& x) { return squared_norm(x); }, 2);
  auto r = convexity_probe(sq, w, 5000);
  CHECK(r.pass);
  CHECK(r.max_violation <= 1e-12);

  r = convexity_probe(analytic([](const Point& x) { return -squared_norm(x); }, 2), w, 5000);
  CHECK_FALSE(r.pass);
  CHECK(r.max_violation > 0.1);

  CHECK(convexity_probe(asplund_field(kTwoPoints), w, 5000).pass);

  r = strong_convexity_probe(strongify(analytic([](const Point&) { return 0.0; }, 2)), w, 5000);
  CHECK(r.pass);
  CHECK(std::abs(r.max_violation) <= 1e-12);
  CHECK(strong_convexity_probe(strongify(asplund_field(kTwoPoints)), w, 5000).pass);
  CHECK_FALSE(strong_convexity_probe(analytic([](const Point& x) { return 0.5 * squared_norm(x); }, 2), w, 5000).pass);
}

TEST_CASE("smooth cutoff is 1 inside R, 0 outside 2R and C2 at the junctions") {
  CHECK(smooth_cutoff(Point{0.5, 0.5}, 1.0) == 1.0);
  CHECK(smooth_cutoff(Point{2.0, 0.1}, 1.0) == 0.0);
  CHECK(smooth_cutoff(Point{1.5, 0.0}, 1.0) == doctest::Approx(0.5));
  // Second differences across the junctions stay bounded.
  const double h = 1e-4;
  for (double r : {1.0, 2.0}) {
    const double d2 = (smooth_cutoff(Point{r + h}, 1.0) - 2 * smooth_cutoff(Point{r}, 1.0) +
                       smooth_cutoff(Point{r - h}, 1.0)) / (h * h);
    CHECK(std::abs(d2) <= 1e-2);
  }
}

TEST_CASE("cc_decompose_c2 examples") {
  const Point origin(2);
  for (const char* name : {"sin1", "sq_norm"}) {
    const auto f = named_field(name, 2);
    const double radius = std::string(name) == "sin1" ? 3.0 : 1.0;
    const auto dec = cc_decompose_c2(f, radius);
    std::mt19937_64 rng(4);
    double residual = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Point x = sample_region(BallRegion{origin, radius}, rng);
      residual = std::max(residual, std::abs(dec.g(x) - dec.h(x) - f(x)));
    }
    CHECK(residual <= 1e-12);
    CHECK(convexity_probe(dec.g, BallRegion{origin, 2 * radius}, 10000, 3).pass);
    CHECK(convexity_probe(dec.h, BallRegion{origin, 2 * radius}, 1000, 3).pass);
  }
  // sin(x1): |D^2(phi f)| >= |sin''| = |sin| near x1 = pi/2.
  const auto dec = cc_decompose_c2(named_field("sin1", 2), 3.0);
  CHECK(dec.c_r >= 0.5 * dec.hessian_bound);
  CHECK(dec.hessian_bound >= 0.99);

  const auto lin = analytic([](const Point& x) { return 2 * x[0] - x[1]; }, 2, true);
  const auto dl = cc_decompose_c2(lin, 1.0);
  CHECK(convexity_probe(dl.g, BallRegion{origin, 2.0}, 10000, 3).pass);
  CHECK(dl.g(Point{0.3, 0.2}) - dl.h(Point{0.3, 0.2}) == doctest::Approx(0.4));
}

TEST_CASE("cc_decompose_c2 errors") {
  CHECK_THROWS_AS(cc_decompose_c2(named_field("abs", 2), 1.0), DecompositionError);
  CHECK_THROWS_AS(cc_decompose_c2(named_field("sin1", 2), 0.0), DecompositionError);
  const auto bad = analytic([](const Point& x) { return x[0] > 0.5 ? std::nan("") : 0.0; }, 2, true);
  CHECK_THROWS_AS(cc_decompose_c2(bad, 1.0), DecompositionError);
}

TEST_CASE("named fields") {
  CHECK(named_field("abs", 2)(Point{-0.5, 3.0}) == 0.5);
  CHECK(named_field("norm", 2)(Point{3.0, 4.0}) == 5.0);
  CHECK(named_field("sq_norm", 2)(Point{3.0, 4.0}) == 25.0);
  CHECK(named_field("sin1", 1)(Point{0.5}) == std::sin(0.5));
  CHECK(named_field("blend:3", 2).c2);
  CHECK(named_field("blend:3", 2)(Point{0.1, 0.2}) == named_field("blend:3", 2)(Point{0.1, 0.2}));
  CHECK_THROWS_AS(named_field("cubic", 2), UnknownFieldError);
  CHECK_THROWS_AS(named_field("blend:x", 2), UnknownFieldError);
  const auto f = named_field("asplund:two", 2, [](const std::string&) { return kTwoPoints; });
  CHECK(f(Point{0.5, 0.0}) == doctest::Approx(0.0));
}
