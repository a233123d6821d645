#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <numeric>
#include <vector>

namespace hyperbolic {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A point of the ambient variable space R^m.
using Point = Eigen::VectorXd;

// Ordered n-tuple of points (x_1, ..., x_n).
struct PointTuple {
  std::vector<Point> points;

  PointTuple() = default;
  explicit PointTuple(std::vector<Point> pts) : points(std::move(pts)) {}

  std::size_t size() const { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
  Point& operator[](std::size_t i) { return points[i]; }

  // Sum of the points; requires a nonempty tuple.
  Point sum() const {
    Point s = Point::Zero(points.front().size());
    for (const auto& p : points) s += p;
    return s;
  }
};

// Real roots of a directional restriction, sorted descending.
struct RootSpectrum {
  std::vector<double> roots;

  std::size_t size() const { return roots.size(); }
  double largest() const { return roots.front(); }
  double smallest() const { return roots.back(); }
  double sum() const { return std::accumulate(roots.begin(), roots.end(), 0.0); }
};

// Nonnegative integer vector; its total is the degree it is taken against.
struct Composition {
  std::vector<int> entries;

  std::size_t size() const { return entries.size(); }
  int total() const { return std::accumulate(entries.begin(), entries.end(), 0); }
  int operator[](std::size_t i) const { return entries[i]; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.entries <=> b.entries;
  }
};

}  // namespace hyperbolic
