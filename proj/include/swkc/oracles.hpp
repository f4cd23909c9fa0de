#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swkc/geometry.hpp"

namespace swkc {

struct MebResult {
  Ball ball;
  bool approximate = false;  // set for d > 3
};

// Smallest enclosing ball via Welzl's move-to-front LP-type recursion.
// Exact for d <= 3; the same path serves d > 3 within a 1e-6 relative
// slack and tags the result approximate. Throws on empty input.
MebResult min_enclosing_ball(std::span<const Point> points);

struct KCenterResult {
  std::vector<Point> centers;
  double radius = 0.0;
};

// Brute-force cap for the exact solver; it enumerates set partitions.
inline constexpr std::size_t kExactKCenterCap = 14;

// Optimal k-center by partition enumeration (restricted growth strings)
// with branch-and-bound pruning. Input capped at kExactKCenterCap points.
KCenterResult exact_k_center(std::span<const Point> points, int k);

// Gonzalez farthest-first traversal, seeded at the first input point,
// ties broken by lowest input index. Factor-2 approximation.
KCenterResult greedy_2approx_k_center(std::span<const Point> points, int k);

// Max pairwise distance, O(n^2). 0 for a single point.
double diameter(std::span<const Point> points);

// Minimum strictly positive pairwise distance; absent if all points
// coincide. Requires at least 2 points.
std::optional<double> closest_pair_nonzero(std::span<const Point> points);

// diameter / closest_pair_nonzero; absent when the latter is absent.
std::optional<double> aspect_ratio(std::span<const Point> points);

}  // namespace swkc
