#include "swkc/one_center.hpp"

#include <algorithm>
#include <stdexcept>

namespace swkc {

DiameterSketch DiameterSketch::fresh(double gamma, const TimedPoint& first) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  DiameterSketch s;
  s.gamma = gamma;
  s.c_old = s.q = s.r = s.b = first;
  s.c_new.reset();
  return s;
}

DiameterSketch DiameterSketch::witness_low(double gamma, const TimedPoint& p_prev,
                                           const TimedPoint& p_last) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (gamma > distance(p_prev.point, p_last.point))
    throw std::invalid_argument("witness_low: gamma exceeds the pair distance");
  if (p_last.time != p_prev.time + 1)
    throw std::invalid_argument("witness_low: pair must be consecutive arrivals");
  DiameterSketch s;
  s.gamma = gamma;
  s.c_old = s.q = s.b = p_prev;
  s.c_new = p_last;
  s.r = p_last;
  return s;
}

DiameterSketch DiameterSketch::witness_high(double gamma, const TimedPoint& p) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  DiameterSketch s;
  s.gamma = gamma;
  s.c_old = s.q = s.r = s.b = p;
  s.c_new.reset();
  return s;
}

void DiameterSketch::update(const TimedPoint& p, const WindowClock& clock) {
  if (p.time != clock.now) throw std::invalid_argument("update: point not stamped at clock.now");
  if (p.time <= r.time) throw std::invalid_argument("update: out-of-order arrival");

  const std::int64_t dead = clock.expiry_horizon();
  if (c_old.time <= dead) {
    if (c_new && c_old.time == q.time) {
      c_old = r;
      b = *c_new;
      c_new.reset();
    } else if (c_new) {
      b = c_old;
      c_old = q;
      c_new.reset();
    } else {
      b = c_old;
      c_old = r;
    }
  }

  // Insert case analysis; all comparisons strictly "> gamma".
  if (!c_new) {
    if (distance(p.point, r.point) > gamma) {
      c_old = r;
      q = r;
      c_new = p;
    } else if (distance(p.point, c_old.point) > gamma) {
      q = r;
      c_new = p;
    }
  } else {
    if (distance(p.point, r.point) > gamma) {
      c_old = r;
      q = r;
      c_new = p;
    } else if (distance(p.point, c_new->point) > gamma) {
      c_old = *c_new;
      q = r;
      c_new = p;
    } else if (distance(p.point, q.point) > gamma && c_old.time != q.time) {
      c_old = q;
      q = r;
      c_new = p;
    }
  }

  r = p;
}

OneCenterAnswer DiameterSketch::answer() const {
  OneCenterAnswer a;
  if (c_new) {
    a.kind = OneCenterAnswer::Kind::two_points;
    a.pair = std::make_pair(c_old, *c_new);
  } else {
    a.kind = OneCenterAnswer::Kind::one_center;
    a.ball = Ball{midpoint(c_old.point, b.point), 1.5 * gamma};
  }
  return a;
}

GammaLadder::GammaLadder(double epsilon, std::int64_t window_size)
    : grid_(epsilon), window_(window_size) {
  if (window_size < 1) throw std::invalid_argument("window size must be >= 1");
}

DiameterSketch GammaLadder::replayed(DiameterSketch base, double gamma, const TimedPoint& p,
                                     const WindowClock& clock) {
  base.gamma = gamma;
  base.update(p, clock);
  return base;
}

void GammaLadder::observe(const TimedPoint& p, const WindowClock& clock) {
  if (p.time != clock.now) throw std::invalid_argument("observe: point not stamped at clock.now");
  ++count_;
  if (has_prev_ && !coords_equal(prev_.point, p.point)) last_distinct_ = p.time;
  // All alive points coincide iff no distinct consecutive alive pair exists.
  const bool degen = last_distinct_ < std::max<std::int64_t>(2, clock.now - window_ + 2);

  if (!active_) {
    if (!has_pregrid_) {
      pregrid_ = DiameterSketch::fresh(1.0, p);
      has_pregrid_ = true;
    } else {
      // While every point so far coincides, updates are estimate-independent,
      // so one shared sketch stands in for the whole grid.
      const DiameterSketch pre = pregrid_;
      if (!degen) {
        activate(pre, p, clock);
      } else {
        pregrid_.update(p, clock);
      }
    }
  } else {
    const std::int64_t old_bottom = sketches_.begin()->first;
    const std::int64_t old_top = sketches_.rbegin()->first;
    const DiameterSketch bottom_pre = sketches_.begin()->second;
    const DiameterSketch top_pre = sketches_.rbegin()->second;
    for (auto& [i, s] : sketches_) s.update(p, clock);
    if (!degen) recompute(p, clock, bottom_pre, top_pre, old_bottom, old_top);
  }

  degenerate_ = degen;
  prev_ = p;
  has_prev_ = true;
}

void GammaLadder::activate(const DiameterSketch& pre, const TimedPoint& p, const WindowClock& clock) {
  const double dlast = distance(prev_.point, p.point);
  i_low_ = grid_.largest_below(dlast);

  std::map<std::int64_t, DiameterSketch> built;
  std::int64_t j = i_low_;
  while (true) {
    DiameterSketch s = replayed(pre, grid_.value(j), p, clock);
    const bool oc = s.answer().kind == OneCenterAnswer::Kind::one_center;
    built.emplace(j, std::move(s));
    if (oc) break;
    ++j;
  }
  i_est_ = j;
  i_high_ = grid_.smallest_at_least(3.0 * grid_.value(i_est_));
  for (std::int64_t i = j + 1; i <= i_high_; ++i)
    built.emplace(i, replayed(pre, grid_.value(i), p, clock));

  sketches_ = std::move(built);
  active_ = true;
}

void GammaLadder::recompute(const TimedPoint& p, const WindowClock& clock,
                            const DiameterSketch& bottom_pre, const DiameterSketch& top_pre,
                            std::int64_t old_bottom, std::int64_t old_top) {
  const double dlast = distance(prev_.point, p.point);
  if (dlast > 0.0) i_low_ = grid_.largest_below(dlast);

  // gamma_e: smallest maintained estimate answering one_center. If every
  // sketch flipped to two_points this arrival, estimates above the old top
  // still share its pre-arrival state; replay upward until one answers.
  std::map<std::int64_t, DiameterSketch> extras;
  std::optional<std::int64_t> ie;
  for (const auto& [i, s] : sketches_) {
    if (s.answer().kind == OneCenterAnswer::Kind::one_center) {
      ie = i;
      break;
    }
  }
  if (!ie) {
    std::int64_t j = old_top;
    while (true) {
      ++j;
      DiameterSketch s = replayed(top_pre, grid_.value(j), p, clock);
      const bool oc = s.answer().kind == OneCenterAnswer::Kind::one_center;
      extras.emplace(j, std::move(s));
      if (oc) {
        ie = j;
        break;
      }
    }
  }
  i_est_ = *ie;
  i_high_ = grid_.smallest_at_least(3.0 * grid_.value(i_est_));

  // Shrink first, then grow.
  std::erase_if(sketches_, [&](const auto& kv) { return kv.first < i_low_ || kv.first > i_high_; });
  for (auto& [i, s] : extras)
    if (i >= i_low_ && i <= i_high_) sketches_.insert_or_assign(i, std::move(s));

  for (std::int64_t i = i_low_; i <= i_high_; ++i) {
    if (sketches_.count(i)) continue;
    if (i == i_low_) {
      sketches_.emplace(i, DiameterSketch::witness_low(grid_.value(i), prev_, p));
    } else if (i < old_bottom) {
      sketches_.emplace(i, replayed(bottom_pre, grid_.value(i), p, clock));
    } else if (i > old_top) {
      sketches_.emplace(i, replayed(top_pre, grid_.value(i), p, clock));
    } else {
      throw std::logic_error("ladder range not contiguous");
    }
  }
}

Ball GammaLadder::answer() const {
  if (count_ == 0) throw std::logic_error("answer: empty stream");
  if (degenerate_ || !active_) return Ball{prev_.point, 0.0};
  for (const auto& [i, s] : sketches_) {
    auto a = s.answer();
    if (a.kind == OneCenterAnswer::Kind::one_center) return *a.ball;
  }
  throw std::logic_error("ladder invariant violated: no one_center estimate");
}

Ball GammaLadder::baseline() const {
  if (count_ == 0) throw std::logic_error("baseline: empty stream");
  if (degenerate_ || !active_) return Ball{prev_.point, 0.0};
  for (auto it = sketches_.rbegin(); it != sketches_.rend(); ++it) {
    auto a = it->second.answer();
    if (a.kind == OneCenterAnswer::Kind::two_points) {
      const TimedPoint& earlier = a.pair->first;
      const TimedPoint& later = a.pair->second;
      return Ball{later.point, 3.0 * distance(earlier.point, later.point)};
    }
  }
  return Ball{prev_.point, 0.0};
}

const TimedPoint& GammaLadder::last_point() const {
  if (count_ == 0) throw std::logic_error("no points ingested");
  return prev_;
}

double GammaLadder::gamma_low() const {
  if (!active_) throw std::logic_error("ladder not active");
  return grid_.value(i_low_);
}

double GammaLadder::gamma_high() const {
  if (!active_) throw std::logic_error("ladder not active");
  return grid_.value(i_high_);
}

double GammaLadder::gamma_estimate() const {
  if (!active_) throw std::logic_error("ladder not active");
  return grid_.value(i_est_);
}

}  // namespace swkc
