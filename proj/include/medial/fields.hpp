#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "medial/convex.hpp"
#include "medial/set_geometry.hpp"

namespace medial {

class UnknownFieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using SetResolver = std::function<ClosedSet(const std::string& ref)>;

/// Analytic fields by name:
///   abs       |x_1|
///   norm      |x|
///   sq_norm   |x|^2
///   sin1      sin(x_1)                  (C^2)
///   blend:<seed>  random quadratic plus sine (C^2)
///   asplund:<set-ref>  |x|^2 - dist(x, E)^2, E looked up through `resolve`
/// sq_norm is flagged C^2 as well.
ScalarField named_field(const std::string& name, std::size_t dim, const SetResolver& resolve = {});

/// x^T A x / 2 + b sin(<w, x> + c) with A, b, w, c drawn from `seed`.
ScalarField quadratic_sine_blend(std::uint64_t seed, std::size_t dim);

}  // namespace medial
