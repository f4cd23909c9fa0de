#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace swkc {

// Relative tolerance used by geometric comparisons throughout the library.
inline constexpr double kDefaultTolerance = 1e-9;

// A point in d-dimensional Euclidean space. Immutable after construction;
// the constructor rejects empty or non-finite coordinate vectors.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c);
  Point(std::initializer_list<double> c);

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
};

bool coords_equal(const Point& a, const Point& b);

// L2 distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& a, const Point& b);

// Coordinate-wise average. Throws on dimension mismatch.
Point midpoint(const Point& a, const Point& b);

struct Ball {
  Point center;
  double radius = 0.0;
};

// Membership with relative+absolute slack:
// distance(center, p) <= radius * (1 + tol) + tol.
bool contains(const Ball& b, const Point& p, double tol);

}  // namespace swkc
