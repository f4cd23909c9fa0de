#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "swkc/geometry.hpp"
#include "swkc/grid.hpp"
#include "swkc/one_center.hpp"
#include "swkc/oracles.hpp"
#include "swkc/window.hpp"

namespace swkc {

// Low-dimension trade-off: capacity multiplier 2^ceil(D*t), threshold
// shrink (1/2)^t. t = 0 recovers the base algorithm for any D.
struct LowDimConfig {
  int t = 0;
  double doubling_exponent = 2.0;
};

// Approximation factor without the epsilon term: c + 2*sqrt(3)*(1/2)^t.
double lowdim_factor(const LowDimConfig& cfg, double c);

std::int64_t capacity_for(int k, const LowDimConfig& cfg);
double threshold_for(double r, const LowDimConfig& cfg);

// Fixed-estimate coreset sketch: at most `capacity` active centers, one
// representative per active center, orphans for naturally expired centers,
// and the (FT, CT) feasibility clock.
struct CoresetSketch {
  double r = 1.0;
  int k = 1;
  LowDimConfig cfg;
  std::int64_t capacity = 2;
  double threshold = 0.0;

  std::vector<TimedPoint> active;  // insertion order; active[i] owns reps[i]
  std::vector<TimedPoint> reps;
  std::vector<TimedPoint> orphans;
  std::int64_t feasible_time = 0;
  std::int64_t current_time = 0;

  static CoresetSketch fresh(double r, int k, const LowDimConfig& cfg);

  void update(const TimedPoint& p, const WindowClock& clock);

  bool feasible() const { return feasible_time <= current_time; }

  // Representatives plus orphans, deduplicated by time. Requires feasible().
  std::vector<TimedPoint> coreset() const;
};

enum class SolverKind { exact_c1, greedy_c2 };

struct KCenterSolution {
  std::vector<Ball> balls;
  SolverKind solver_used = SolverKind::greedy_c2;
  double r_used = 0.0;
  std::int64_t coreset_size = 0;
  bool fell_back = false;  // exact solver fell back to greedy (coreset over cap)
};

struct SnapshotAccess;

// Estimate ladder for the coreset sketches, with the companion one-center
// ladder supplying gamma_e for the upper witness.
class RLadder {
 public:
  RLadder(double epsilon, std::int64_t window_size, int k, LowDimConfig cfg);

  void observe(const TimedPoint& p, const WindowClock& clock);

  // Solve on the smallest feasible estimate's coreset and enlarge by
  // 2*threshold. exact_c1 falls back to greedy beyond the brute-force cap.
  KCenterSolution solve(SolverKind requested) const;

  bool degenerate() const { return companion_.degenerate(); }
  bool active() const { return active_; }
  std::size_t sketch_count() const { return sketches_.size(); }
  std::int64_t capacity() const { return capacity_; }
  const GammaLadder& companion() const { return companion_; }
  double r_low() const;
  double r_high() const;
  const EstimateGrid& grid() const { return grid_; }

  template <class F>
  void for_each_sketch(F&& f) const {
    for (const auto& [i, s] : sketches_) f(i, s);
  }

 private:
  friend struct SnapshotAccess;

  void activate(const CoresetSketch& pre, const TimedPoint& p, const WindowClock& clock);
  void recompute(const TimedPoint& p, const WindowClock& clock, const CoresetSketch& top_pre,
                 std::int64_t old_bottom, std::int64_t old_top);
  static CoresetSketch replayed(CoresetSketch base, double r, const TimedPoint& p,
                                const WindowClock& clock);
  CoresetSketch witness_low_state(double r, const WindowClock& clock) const;
  static CoresetSketch witness_high_state(double r, int k, const LowDimConfig& cfg,
                                          const TimedPoint& p);

  EstimateGrid grid_;
  std::int64_t window_ = 1;
  int k_ = 1;
  LowDimConfig cfg_;
  std::int64_t capacity_ = 2;
  GammaLadder companion_;

  std::map<std::int64_t, CoresetSketch> sketches_;
  std::deque<TimedPoint> recent_;  // last capacity+2 arrivals
  std::int64_t i_low_ = 0;
  std::int64_t i_high_ = 0;
  bool active_ = false;
  CoresetSketch pregrid_;
  bool has_pregrid_ = false;
  std::int64_t count_ = 0;
};

}  // namespace swkc
