#include "medial/fields.hpp"

#include <array>
#include <cmath>
#include <random>

namespace medial {

ScalarField quadratic_sine_blend(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<std::array<double, Point::kMaxDim>, Point::kMaxDim> a{};
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a[i][j] = a[j][i] = u(rng);
  }
  Point w(dim);
  for (std::size_t i = 0; i < dim; ++i) w[i] = 2 * u(rng);
  const double amp = 1.5 * u(rng);
  const double phase = 3 * u(rng);
  return {[a, w, amp, phase, dim](const Point& x) {
            double q = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
              for (std::size_t j = 0; j < dim; ++j) q += a[i][j] * x[i] * x[j];
            }
            return 0.5 * q + amp * std::sin(dot(w, x) + phase);
          },
          dim, "blend:" + std::to_string(seed), true};
}

ScalarField named_field(const std::string& name, std::size_t dim, const SetResolver& resolve) {
  if (dim < 1 || dim > Point::kMaxDim) throw UnknownFieldError("field dimension must be 1, 2 or 3");
  if (name == "abs") return {[](const Point& x) { return std::abs(x[0]); }, dim, name, false};
  if (name == "norm") return {[](const Point& x) { return norm(x); }, dim, name, false};
  if (name == "sq_norm") return {[](const Point& x) { return squared_norm(x); }, dim, name, true};
  if (name == "sin1") return {[](const Point& x) { return std::sin(x[0]); }, dim, name, true};

  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "blend" && !arg.empty()) {
    try {
      return quadratic_sine_blend(std::stoull(arg), dim);
    } catch (const std::logic_error&) {
      throw UnknownFieldError("blend seed '" + arg + "' is not an unsigned integer");
    }
  }
  if (head == "asplund") {
    if (!resolve) throw UnknownFieldError("asplund field needs a set reference resolver");
    auto f = asplund_field(resolve(arg));
    f.tag = name;
    return f;
  }
  throw UnknownFieldError("unknown field '" + name + "'");
}

}  // namespace medial
