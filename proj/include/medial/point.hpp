#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace medial {

/// Fixed-capacity coordinate vector for n <= 3.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 3;

  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  std::size_t size() const { return dim_; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }

  double* begin() { return c_.data(); }
  double* end() { return c_.data() + dim_; }
  const double* begin() const { return c_.data(); }
  const double* end() const { return c_.data() + dim_; }

  /// Unit vector along `axis`.
  static Point basis(std::size_t dim, std::size_t axis);

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

  bool operator==(const Point& o) const;

  /// The point with coordinate `axis` removed.
  Point drop(std::size_t axis) const;
  /// Inverse of drop(): inserts `value` at position `axis`.
  Point insert(std::size_t axis, double value) const;

  bool finite() const;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(Point a, double s);
Point operator*(double s, Point a);

double dot(const Point& a, const Point& b);
double squared_norm(const Point& a);
double norm(const Point& a);
double distance(const Point& a, const Point& b);

/// Axis-aligned box used to restrict every numerical sweep.
struct Window {
  Point lower;
  Point upper;

  Window() = default;
  Window(Point lo, Point hi);

  std::size_t dim() const { return lower.size(); }
  bool contains(const Point& x) const;
  /// Smallest distance from x to the window boundary (x assumed inside).
  double boundary_distance(const Point& x) const;
  double volume() const;

  /// [-half, half]^dim
  static Window centered(std::size_t dim, double half);
};

/// Regular node lattice over a window: `cells` intervals per axis, so
/// cells + 1 nodes per axis including both window faces.
class Grid {
 public:
  Grid(Window window, std::size_t cells);

  const Window& window() const { return window_; }
  std::size_t dim() const { return window_.dim(); }
  std::size_t cells() const { return cells_; }
  std::size_t nodes_per_axis() const { return cells_ + 1; }
  std::size_t node_count() const;
  std::size_t cell_count() const;
  double spacing(std::size_t axis) const;

  Point node(std::size_t index) const;
  /// Per-axis integer coordinates of a node.
  std::array<std::size_t, Point::kMaxDim> unravel(std::size_t index) const;
  std::size_t ravel(const std::array<std::size_t, Point::kMaxDim>& idx) const;

  /// Index of the node adjacent to `index` in the +axis direction; only valid
  /// when the node is not on the upper face of that axis.
  std::size_t step(std::size_t index, std::size_t axis) const;

 private:
  Window window_;
  std::size_t cells_;
  std::array<std::size_t, Point::kMaxDim> stride_{};
};

}  // namespace medial
