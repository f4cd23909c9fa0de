#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "swkc/geometry.hpp"
#include "swkc/grid.hpp"
#include "swkc/window.hpp"

namespace swkc {

struct OneCenterAnswer {
  enum class Kind { two_points, one_center };
  Kind kind = Kind::one_center;
  std::optional<std::pair<TimedPoint, TimedPoint>> pair;  // two_points: (c_old, c_new)
  std::optional<Ball> ball;                               // one_center: B(mid(c_old,b), 1.5*gamma)
};

// Fixed-estimate diameter sketch with bridge point. Point identity is by
// arrival time; the bridge b is meaningful only while c_new is absent.
struct DiameterSketch {
  double gamma = 1.0;
  TimedPoint c_old, q, r, b;
  std::optional<TimedPoint> c_new;

  // State right after the first point of the stream.
  static DiameterSketch fresh(double gamma, const TimedPoint& first);

  // Low-side witness: the state any estimate gamma <= |p_prev p_last| is in
  // after the arrival of p_last. Requires consecutive stamps.
  static DiameterSketch witness_low(double gamma, const TimedPoint& p_prev, const TimedPoint& p_last);

  // High-side witness: a valid state for estimates above the window
  // diameter (caller contract). Answers one_center around p.
  static DiameterSketch witness_high(double gamma, const TimedPoint& p);

  // One streaming step: expiry block, insert case analysis, r <- p.
  void update(const TimedPoint& p, const WindowClock& clock);

  OneCenterAnswer answer() const;
};

struct SnapshotAccess;

// The maintained contiguous range of estimates (1+eps)^i bracketed by the
// gamma_L / gamma_U witnesses, with the degenerate-window bypass.
class GammaLadder {
 public:
  GammaLadder(double epsilon, std::int64_t window_size);

  // Feed the next arrival; clock must already be advanced to p.time.
  void observe(const TimedPoint& p, const WindowClock& clock);

  // One-center ball of the smallest estimate answering one_center
  // (B(last,0) while the window is degenerate). Throws on empty stream.
  Ball answer() const;

  // Diameter-pair baseline: B(later of pair, 3|pq|) from the largest
  // estimate answering two_points; B(last,0) when no pair exists.
  Ball baseline() const;

  bool degenerate() const { return degenerate_; }
  bool active() const { return active_; }
  std::size_t sketch_count() const { return sketches_.size(); }
  std::int64_t points_seen() const { return count_; }
  const TimedPoint& last_point() const;

  double gamma_low() const;       // gamma_L
  double gamma_high() const;      // gamma_U
  double gamma_estimate() const;  // gamma_e
  const EstimateGrid& grid() const { return grid_; }

  template <class F>
  void for_each_sketch(F&& f) const {
    for (const auto& [i, s] : sketches_) f(i, s);
  }

 private:
  friend struct SnapshotAccess;

  void activate(const DiameterSketch& pre, const TimedPoint& p, const WindowClock& clock);
  void recompute(const TimedPoint& p, const WindowClock& clock, const DiameterSketch& bottom_pre,
                 const DiameterSketch& top_pre, std::int64_t old_bottom, std::int64_t old_top);
  static DiameterSketch replayed(DiameterSketch base, double gamma, const TimedPoint& p,
                                 const WindowClock& clock);

  EstimateGrid grid_;
  std::int64_t window_ = 1;
  std::map<std::int64_t, DiameterSketch> sketches_;
  std::int64_t i_low_ = 0;   // grid index of gamma_L
  std::int64_t i_est_ = 0;   // grid index of gamma_e
  std::int64_t i_high_ = 0;  // grid index of gamma_U

  bool active_ = false;
  DiameterSketch pregrid_;  // shared pre-activation sketch (degenerate history)
  bool has_pregrid_ = false;

  TimedPoint prev_;  // p_{n-1}
  bool has_prev_ = false;
  std::int64_t last_distinct_ = 0;  // latest t with p_t != p_{t-1}
  bool degenerate_ = true;
  std::int64_t count_ = 0;
};

}  // namespace swkc
