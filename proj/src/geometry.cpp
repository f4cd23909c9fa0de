#include "swkc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace swkc {

namespace {

void validate_coords(const std::vector<double>& c) {
  if (c.empty()) throw std::invalid_argument("point: dimension must be >= 1");
  for (double v : c) {
    if (!std::isfinite(v)) throw std::invalid_argument("point: non-finite coordinate");
  }
}

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

Point::Point(std::vector<double> c) : coords(std::move(c)) { validate_coords(coords); }

Point::Point(std::initializer_list<double> c) : coords(c) { validate_coords(coords); }

bool coords_equal(const Point& a, const Point& b) {
  return a.coords == b.coords;
}

double distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a.coords[i] - b.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point midpoint(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::vector<double> m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) m[i] = 0.5 * (a.coords[i] + b.coords[i]);
  return Point(std::move(m));
}

bool contains(const Ball& b, const Point& p, double tol) {
  if (tol < 0.0) throw std::invalid_argument("negative tolerance");
  return distance(b.center, p) <= b.radius * (1.0 + tol) + tol;
}

}  // namespace swkc
