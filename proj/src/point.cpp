#include "medial/point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace medial {

Point::Point(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim) {
    throw std::invalid_argument("point dimension must be at most 3");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const double> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point Point::basis(std::size_t dim, std::size_t axis) {
  Point e(dim);
  e[axis] = 1.0;
  return e;
}

Point& Point::operator+=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

bool Point::operator==(const Point& o) const {
  return dim_ == o.dim_ && std::equal(begin(), end(), o.begin());
}

Point Point::drop(std::size_t axis) const {
  Point r;
  r.dim_ = dim_ - 1;
  for (std::size_t i = 0, j = 0; i < dim_; ++i) {
    if (i != axis) r.c_[j++] = c_[i];
  }
  return r;
}

Point Point::insert(std::size_t axis, double value) const {
  Point r(dim_ + 1);
  for (std::size_t i = 0, j = 0; i < r.dim_; ++i) {
    r.c_[i] = (i == axis) ? value : c_[j++];
  }
  return r;
}

bool Point::finite() const {
  return std::all_of(begin(), end(), [](double v) { return std::isfinite(v); });
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(Point a, double s) { return a *= s; }
Point operator*(double s, Point a) { return a *= s; }

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Point& a) { return dot(a, a); }
double norm(const Point& a) { return std::sqrt(dot(a, a)); }
double distance(const Point& a, const Point& b) { return norm(a - b); }

Window::Window(Point lo, Point hi) : lower(lo), upper(hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("window corners differ in dimension");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw std::invalid_argument("window requires lower < upper on every axis");
  }
}

bool Window::contains(const Point& x) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

double Window::boundary_distance(const Point& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) {
    d = std::min({d, x[i] - lower[i], upper[i] - x[i]});
  }
  return d;
}

double Window::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
  return v;
}

Window Window::centered(std::size_t dim, double half) {
  Point lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = -half;
    hi[i] = half;
  }
  return {lo, hi};
}

Grid::Grid(Window window, std::size_t cells) : window_(std::move(window)), cells_(cells) {
  if (cells == 0) throw std::invalid_argument("grid needs at least one cell per axis");
  std::size_t s = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    stride_[i] = s;
    s *= nodes_per_axis();
  }
}

std::size_t Grid::node_count() const {
  std::size_t c = 1;
  for (std::size_t i = 0; i < dim(); ++i) c *= nodes_per_axis();
  return c;
}

std::size_t Grid::cell_count() const {
  std::size_t c = 1;
  for (std::size_t i = 0; i < dim(); ++i) c *= cells_;
  return c;
}

double Grid::spacing(std::size_t axis) const {
  return (window_.upper[axis] - window_.lower[axis]) / static_cast<double>(cells_);
}

std::array<std::size_t, Point::kMaxDim> Grid::unravel(std::size_t index) const {
  std::array<std::size_t, Point::kMaxDim> idx{};
  for (std::size_t i = 0; i < dim(); ++i) {
    idx[i] = index % nodes_per_axis();
    index /= nodes_per_axis();
  }
  return idx;
}

std::size_t Grid::ravel(const std::array<std::size_t, Point::kMaxDim>& idx) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < dim(); ++i) r += idx[i] * stride_[i];
  return r;
}

Point Grid::node(std::size_t index) const {
  const auto idx = unravel(index);
  Point x(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    // Last node lands exactly on the upper face.
    x[i] = idx[i] == cells_ ? window_.upper[i]
                            : window_.lower[i] + static_cast<double>(idx[i]) * spacing(i);
  }
  return x;
}

std::size_t Grid::step(std::size_t index, std::size_t axis) const { return index + stride_[axis]; }

}  // namespace medial
