#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace swkc {

// Geometric estimate grid (1+eps)^i, i in Z, anchored at value(0) = 1.
// Index lookups round log ratios with a 1e-12 guard so a value landing
// exactly on a grid point resolves consistently.
class EstimateGrid {
 public:
  explicit EstimateGrid(double epsilon) : eps_(epsilon), base_(1.0 + epsilon), log_base_(std::log1p(epsilon)) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  }

  double epsilon() const { return eps_; }
  double value(std::int64_t i) const { return std::pow(base_, static_cast<double>(i)); }

  // Largest i with value(i) < x. Requires x > 0.
  std::int64_t largest_below(double x) const {
    check(x);
    auto i = static_cast<std::int64_t>(std::floor(std::log(x) / log_base_ + 1e-12));
    while (value(i) >= x) --i;
    while (value(i + 1) < x) ++i;
    return i;
  }

  // Smallest i with value(i) >= x. Requires x > 0.
  std::int64_t smallest_at_least(double x) const {
    check(x);
    auto i = static_cast<std::int64_t>(std::ceil(std::log(x) / log_base_ - 1e-12));
    while (value(i) < x) ++i;
    while (value(i - 1) >= x) --i;
    return i;
  }

 private:
  static void check(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("grid lookup requires finite x > 0");
  }

  double eps_;
  double base_;
  double log_base_;
};

}  // namespace swkc
