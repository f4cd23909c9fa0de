#include "swkc/k_center.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace swkc {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

double lowdim_factor(const LowDimConfig& cfg, double c) {
  if (cfg.t < 0) throw std::invalid_argument("t must be >= 0");
  if (c < 1.0) throw std::invalid_argument("c must be >= 1");
  return c + 2.0 * kSqrt3 * std::pow(0.5, cfg.t);
}

std::int64_t capacity_for(int k, const LowDimConfig& cfg) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.t < 0) throw std::invalid_argument("t must be >= 0");
  int shift = 0;
  if (cfg.t > 0) {
    if (!(cfg.doubling_exponent > 0.0)) throw std::invalid_argument("doubling exponent must be positive");
    shift = static_cast<int>(std::ceil(cfg.doubling_exponent * cfg.t));
    if (shift > 24) throw std::invalid_argument("capacity multiplier too large");
  }
  return 2ll * k * (1ll << shift);
}

double threshold_for(double r, const LowDimConfig& cfg) {
  return kSqrt3 * std::pow(0.5, cfg.t) * r;
}

CoresetSketch CoresetSketch::fresh(double r, int k, const LowDimConfig& cfg) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  CoresetSketch s;
  s.r = r;
  s.k = k;
  s.cfg = cfg;
  s.capacity = capacity_for(k, cfg);
  s.threshold = threshold_for(r, cfg);
  return s;
}

void CoresetSketch::update(const TimedPoint& p, const WindowClock& clock) {
  if (p.time != clock.now) throw std::invalid_argument("update: point not stamped at clock.now");
  if (p.time <= current_time) throw std::invalid_argument("update: out-of-order arrival");
  current_time = p.time;
  const std::int64_t dead = clock.expiry_horizon();

  std::erase_if(orphans, [&](const TimedPoint& x) { return x.time <= dead; });

  // Naturally expired active centers: no FT change, no purge; a still-alive
  // representative outlives its center as an orphan.
  for (std::size_t i = 0; i < active.size();) {
    if (active[i].time <= dead) {
      if (reps[i].time > dead) orphans.push_back(reps[i]);
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
      reps.erase(reps.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }

  // Insert(p): membership is non-strict.
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < active.size(); ++i)
    if (distance(active[i].point, p.point) <= threshold) hits.push_back(i);

  if (hits.empty()) {
    if (static_cast<std::int64_t>(active.size()) == capacity) {
      const TimedPoint victim = active.front();  // oldest, still alive here
      feasible_time = victim.time + clock.window_size;
      std::erase_if(orphans, [&](const TimedPoint& x) { return x.time <= victim.time; });
      if (reps.front().time > victim.time) orphans.push_back(reps.front());
      active.erase(active.begin());
      reps.erase(reps.begin());
    }
    active.push_back(p);
    reps.push_back(p);
  } else {
    for (std::size_t i : hits) reps[i] = p;
  }
}

std::vector<TimedPoint> CoresetSketch::coreset() const {
  if (!feasible()) throw std::logic_error("coreset: sketch is infeasible");
  std::vector<TimedPoint> out = reps;
  out.insert(out.end(), orphans.begin(), orphans.end());
  std::sort(out.begin(), out.end(), [](const TimedPoint& a, const TimedPoint& b) { return a.time < b.time; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TimedPoint& a, const TimedPoint& b) { return a.time == b.time; }),
            out.end());
  return out;
}

RLadder::RLadder(double epsilon, std::int64_t window_size, int k, LowDimConfig cfg)
    : grid_(epsilon),
      window_(window_size),
      k_(k),
      cfg_(cfg),
      capacity_(capacity_for(k, cfg)),
      companion_(epsilon, window_size) {
  if (window_size < 1) throw std::invalid_argument("window size must be >= 1");
}

CoresetSketch RLadder::replayed(CoresetSketch base, double r, const TimedPoint& p,
                                const WindowClock& clock) {
  base.r = r;
  base.threshold = threshold_for(r, base.cfg);
  base.update(p, clock);
  return base;
}

CoresetSketch RLadder::witness_high_state(double r, int k, const LowDimConfig& cfg,
                                          const TimedPoint& p) {
  CoresetSketch s = CoresetSketch::fresh(r, k, cfg);
  s.active.push_back(p);
  s.reps.push_back(p);
  s.current_time = p.time;
  return s;
}

CoresetSketch RLadder::witness_low_state(double r, const WindowClock& clock) const {
  CoresetSketch s = CoresetSketch::fresh(r, k_, cfg_);
  s.current_time = clock.now;
  const std::size_t m = recent_.size();
  if (count_ > capacity_ && window_ > capacity_) {
    // Capacity evictions have been forced: the last capacity arrivals are
    // the active centers and the one before them is the latest victim.
    const std::size_t first = m - static_cast<std::size_t>(capacity_);
    for (std::size_t i = first; i < m; ++i) {
      s.active.push_back(recent_[i]);
      s.reps.push_back(recent_[i]);
    }
    s.feasible_time = recent_[first - 1].time + window_;
  } else {
    // Never more than capacity points alive at once: every alive point is
    // its own active center and no eviction has happened.
    for (const auto& tp : recent_) {
      if (tp.time > clock.expiry_horizon()) {
        s.active.push_back(tp);
        s.reps.push_back(tp);
      }
    }
    s.feasible_time = 0;
  }
  return s;
}

void RLadder::observe(const TimedPoint& p, const WindowClock& clock) {
  companion_.observe(p, clock);
  ++count_;
  recent_.push_back(p);
  while (recent_.size() > static_cast<std::size_t>(capacity_ + 2)) recent_.pop_front();

  if (!active_) {
    if (!has_pregrid_) {
      pregrid_ = CoresetSketch::fresh(1.0, k_, cfg_);
      pregrid_.update(p, clock);
      has_pregrid_ = true;
    } else {
      const CoresetSketch pre = pregrid_;
      if (!companion_.degenerate()) {
        activate(pre, p, clock);
      } else {
        pregrid_.update(p, clock);
      }
    }
    return;
  }

  const std::int64_t old_bottom = sketches_.begin()->first;
  const std::int64_t old_top = sketches_.rbegin()->first;
  const CoresetSketch top_pre = sketches_.rbegin()->second;
  for (auto& [i, s] : sketches_) s.update(p, clock);
  if (!companion_.degenerate()) recompute(p, clock, top_pre, old_bottom, old_top);
}

void RLadder::activate(const CoresetSketch& pre, const TimedPoint& p, const WindowClock& clock) {
  const double dlast = distance(recent_[recent_.size() - 2].point, p.point);
  // Below this limit all estimates share the bottom state (the previous
  // point and p stay distinct actives), and it sits below the optimal
  // radius of the two-coordinate window.
  i_low_ = grid_.largest_below(std::min(dlast * std::pow(2.0, cfg_.t) / kSqrt3, dlast / 2.0));
  i_high_ = grid_.smallest_at_least(std::pow(2.0, cfg_.t) * 6.0 * (1.0 + grid_.epsilon()) *
                                    companion_.gamma_estimate() / kSqrt3);
  if (i_high_ < i_low_) i_high_ = i_low_;
  std::map<std::int64_t, CoresetSketch> built;
  for (std::int64_t i = i_low_; i <= i_high_; ++i)
    built.emplace(i, replayed(pre, grid_.value(i), p, clock));
  sketches_ = std::move(built);
  active_ = true;
}

void RLadder::recompute(const TimedPoint& p, const WindowClock& clock,
                        const CoresetSketch& top_pre, std::int64_t old_bottom,
                        std::int64_t old_top) {
  // Lower witness: refreshed only when the recent tail is certifiably
  // separated (a duplicate among it leaves r_L unchanged, like gamma_L).
  bool fresh_low = false;
  const std::size_t m = recent_.size();
  const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(capacity_) + 1, m);
  if (j >= 2) {
    std::vector<Point> tail;
    tail.reserve(j);
    for (std::size_t i = m - j; i < m; ++i) tail.push_back(recent_[i].point);
    const double v_cap = greedy_2approx_k_center(tail, static_cast<int>(j - 1)).radius;
    if (v_cap > 0.0) {
      const std::size_t j2 = std::min<std::size_t>(2 * static_cast<std::size_t>(k_) + 1, m);
      std::vector<Point> tail2(tail.end() - static_cast<std::ptrdiff_t>(j2), tail.end());
      const double v_2k = greedy_2approx_k_center(tail2, static_cast<int>(j2 - 1)).radius;
      // With at least 2k+1 alive points the sqrt(3) packing bound keeps the
      // witness below r*; smaller windows only guarantee r* >= CP/2.
      const bool pigeonhole = window_ >= static_cast<std::int64_t>(j2) && j2 >= 2 * static_cast<std::size_t>(k_) + 1;
      const double lim = std::min(v_cap * std::pow(2.0, cfg_.t) / kSqrt3,
                                  v_2k / (pigeonhole ? kSqrt3 : 2.0));
      if (lim > 0.0) {
        i_low_ = grid_.largest_below(lim);
        fresh_low = true;
      }
    }
  }

  i_high_ = grid_.smallest_at_least(std::pow(2.0, cfg_.t) * 6.0 * (1.0 + grid_.epsilon()) *
                                    companion_.gamma_estimate() / kSqrt3);
  if (i_high_ < i_low_) i_high_ = i_low_;

  std::erase_if(sketches_, [&](const auto& kv) { return kv.first < i_low_ || kv.first > i_high_; });

  for (std::int64_t i = i_low_; i <= i_high_; ++i) {
    if (sketches_.count(i)) continue;
    if (i < old_bottom || i == i_low_) {
      // Estimates entering from below all take the current lower-witness
      // state; a sketch state is not reinterpretable at a smaller threshold.
      if (!fresh_low) throw std::logic_error("r-ladder low growth without a fresh witness");
      sketches_.emplace(i, witness_low_state(grid_.value(i), clock));
    } else if (i > old_top) {
      if (i == i_high_) {
        sketches_.emplace(i, witness_high_state(grid_.value(i), k_, cfg_, p));
      } else {
        sketches_.emplace(i, replayed(top_pre, grid_.value(i), p, clock));
      }
    } else {
      throw std::logic_error("r-ladder range not contiguous");
    }
  }
}

KCenterSolution RLadder::solve(SolverKind requested) const {
  if (companion_.points_seen() == 0) throw std::logic_error("solve: empty stream");
  KCenterSolution sol;
  sol.solver_used = requested;
  if (companion_.degenerate() || !active_) {
    sol.balls = {Ball{companion_.last_point().point, 0.0}};
    sol.r_used = 0.0;
    return sol;
  }

  const CoresetSketch* chosen = nullptr;
  std::int64_t chosen_i = 0;
  for (const auto& [i, s] : sketches_) {
    if (s.feasible()) {
      chosen = &s;
      chosen_i = i;
      break;
    }
  }
  if (chosen == nullptr) {
    // Every estimate is locked out (possible only in adversarial duplicate
    // mixtures where the lower witness cannot refresh). The companion's
    // one-center ball still covers the window.
    sol.balls = {companion_.answer()};
    sol.r_used = 0.0;
    return sol;
  }

  const auto core = chosen->coreset();
  sol.coreset_size = static_cast<std::int64_t>(core.size());
  std::vector<Point> pts;
  pts.reserve(core.size());
  for (const auto& tp : core) pts.push_back(tp.point);

  SolverKind used = requested;
  if (requested == SolverKind::exact_c1 && pts.size() > kExactKCenterCap) {
    used = SolverKind::greedy_c2;
    sol.fell_back = true;
  }
  const KCenterResult res = used == SolverKind::exact_c1 ? exact_k_center(pts, k_)
                                                         : greedy_2approx_k_center(pts, k_);
  const double enlarge = 2.0 * chosen->threshold;
  sol.solver_used = used;
  sol.r_used = grid_.value(chosen_i);
  for (const auto& c : res.centers) sol.balls.push_back(Ball{c, res.radius + enlarge});
  return sol;
}

double RLadder::r_low() const {
  if (!active_) throw std::logic_error("ladder not active");
  return grid_.value(i_low_);
}

double RLadder::r_high() const {
  if (!active_) throw std::logic_error("ladder not active");
  return grid_.value(i_high_);
}

}  // namespace swkc
