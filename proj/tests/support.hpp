#pragma once

// Shared test scaffolding: a reference ring-buffer window, invariant
// checkers driven by it, and small stream helpers. Test-only; the
// production sketches never see any of this.

#include <deque>
#include <vector>

#include "swkc/geometry.hpp"
#include "swkc/k_center.hpp"
#include "swkc/one_center.hpp"
#include "swkc/oracles.hpp"
#include "swkc/stream_gen.hpp"
#include "swkc/window.hpp"

namespace swkc::test {

inline constexpr double kTol = 1e-9;

// Reference window: the exact alive multiset, kept only by tests.
class RingWindow {
 public:
  explicit RingWindow(std::int64_t n) : n_(n) {}

  void push(const TimedPoint& tp) {
    ring_.push_back(tp);
    while (static_cast<std::int64_t>(ring_.size()) > n_) ring_.pop_front();
  }

  const std::deque<TimedPoint>& alive() const { return ring_; }

  std::vector<Point> alive_points() const {
    std::vector<Point> out;
    out.reserve(ring_.size());
    for (const auto& tp : ring_) out.push_back(tp.point);
    return out;
  }

  bool all_identical() const {
    for (const auto& tp : ring_)
      if (!coords_equal(tp.point, ring_.front().point)) return false;
    return true;
  }

 private:
  std::int64_t n_;
  std::deque<TimedPoint> ring_;
};

// Invariants 1-3 of the diameter sketch, checked against the true window.
// Returns an empty string when everything holds, else a description.
inline std::string check_sketch_invariants(const DiameterSketch& s, const RingWindow& win) {
  const double g = s.gamma;
  const double slack = 1e-9 * std::max(1.0, g);
  const auto& alive = win.alive();
  if (s.c_new) {
    // Invariant 2.
    if (!(distance(s.c_old.point, s.c_new->point) > g - slack)) return "inv2a: |c_old c_new| <= gamma";
    if (s.q.time != s.c_new->time - 1) return "time(q) != time(c_new) - 1";
    for (const auto& x : alive) {
      if (x.time > s.c_old.time && x.time < s.c_new->time &&
          distance(x.point, s.c_old.point) > g + slack)
        return "inv2b: point between c_old and c_new not within gamma of c_old";
      if (x.time > s.c_new->time && distance(x.point, s.c_new->point) > g + slack)
        return "inv2c: point after c_new not within gamma of c_new";
      if (s.c_old.time != s.q.time && x.time > s.q.time && distance(x.point, s.q.point) > g + slack)
        return "inv2d: point after q not within gamma of q";
    }
  } else {
    // Invariants 1 and 3.
    for (const auto& x : alive) {
      for (const auto& y : alive) {
        if (x.time <= s.c_old.time && y.time <= s.c_old.time &&
            distance(x.point, y.point) > 2 * g + slack)
          return "inv1a: old alive pair farther than 2*gamma";
      }
      if (x.time > s.c_old.time && distance(x.point, s.c_old.point) > g + slack)
        return "inv1b: new point not within gamma of c_old";
      if (x.time <= s.c_old.time && distance(x.point, s.b.point) > g + slack)
        return "inv3: old alive point not within gamma of bridge";
    }
  }
  return {};
}

// Coreset sketch structure: space bound, pairwise packing of actives,
// rep/active pairing, and covering when feasible.
inline std::string check_coreset_invariants(const CoresetSketch& s, const RingWindow& win) {
  if (static_cast<std::int64_t>(s.active.size()) > s.capacity) return "active set over capacity";
  if (s.active.size() != s.reps.size()) return "reps not parallel to actives";
  if (static_cast<std::int64_t>(s.active.size() + s.orphans.size()) > 2 * s.capacity)
    return "coreset storage over 2*capacity";
  const double slack = 1e-9 * std::max(1.0, s.threshold);
  for (std::size_t i = 0; i < s.active.size(); ++i) {
    for (std::size_t j = i + 1; j < s.active.size(); ++j)
      if (distance(s.active[i].point, s.active[j].point) <= s.threshold - slack)
        return "active centers within threshold";
    if (distance(s.active[i].point, s.reps[i].point) > s.threshold + slack)
      return "rep outside threshold of its center";
    if (s.reps[i].time < s.active[i].time) return "rep older than its center";
  }
  if (s.feasible()) {
    const auto core = s.coreset();
    for (const auto& x : win.alive()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : core) best = std::min(best, distance(x.point, y.point));
      if (best > 2 * s.threshold + slack) return "feasible sketch leaves an alive point uncovered";
    }
  }
  return {};
}

inline bool covers_all(const std::vector<Ball>& balls, const std::vector<Point>& pts, double tol) {
  for (const auto& p : pts) {
    bool in = false;
    for (const auto& b : balls)
      if (contains(b, p, tol)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  return true;
}

struct StreamCase {
  GenKind kind;
  GenParams params;
  std::uint64_t seed;
};

inline std::vector<Point> make_stream(const StreamCase& c) {
  return generate_stream(c.kind, c.params, c.seed);
}

}  // namespace swkc::test
