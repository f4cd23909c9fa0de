#include <doctest.h>

#include <cmath>

#include "reference_interpreters.hpp"
#include "support.hpp"
#include "swkc/k_center.hpp"
#include "swkc/oracles.hpp"
#include "swkc/stream_gen.hpp"

using namespace swkc;
using test::RingWindow;

namespace {

const double kSqrt3 = std::sqrt(3.0);

TimedPoint tp(std::initializer_list<double> c, std::int64_t t) { return TimedPoint{Point(c), t}; }

bool same_tp(const TimedPoint& a, const TimedPoint& b) {
  return a.time == b.time && coords_equal(a.point, b.point);
}

// Field-by-field comparison against the flat-R interpreter.
bool same_coreset_state(const CoresetSketch& s, const test::CoresetReference& ref) {
  if (s.feasible_time != ref.FT || s.current_time != ref.CT) return false;
  if (s.active.size() != ref.A.size()) return false;
  for (std::size_t i = 0; i < s.active.size(); ++i)
    if (!same_tp(s.active[i], ref.A[i])) return false;
  // reps of live actives must match by owner; leftovers are the orphans.
  std::vector<std::int64_t> prod, refr;
  for (const auto& x : s.reps) prod.push_back(x.time);
  for (const auto& x : s.orphans) prod.push_back(x.time);
  for (const auto& e : ref.R) refr.push_back(e.pt.time);
  std::sort(prod.begin(), prod.end());
  std::sort(refr.begin(), refr.end());
  if (prod != refr) return false;
  for (std::size_t i = 0; i < s.active.size(); ++i) {
    bool found = false;
    for (const auto& e : ref.R)
      if (e.owner == s.active[i].time && same_tp(e.pt, s.reps[i])) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lowdim factors match the trade-off table") {
  CHECK(lowdim_factor({0, 2.0}, 2.0) == doctest::Approx(2.0 + 2.0 * kSqrt3));
  CHECK(std::abs(lowdim_factor({1, 2.0}, 1.0) - 2.733) < 0.01);
  CHECK(std::abs(lowdim_factor({3, 2.0}, 1.0) - 1.434) < 0.01);
  CHECK(std::abs(lowdim_factor({5, 2.0}, 1.0) - 1.109) < 0.01);
  CHECK(std::abs(lowdim_factor({8, 2.0}, 1.0) - 1.014) < 0.01);
  CHECK(std::abs(lowdim_factor({10, 2.0}, 1.0) - 1.004) < 0.01);
  CHECK(std::abs(lowdim_factor({0, 2.0}, 2.0) - 5.465) < 0.01);
  CHECK(std::abs(lowdim_factor({0, 2.0}, 1.0) - 4.465) < 0.01);
  CHECK_THROWS_AS(lowdim_factor({-1, 2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("capacity and threshold formulas") {
  CHECK(capacity_for(2, {0, 2.0}) == 4);
  CHECK(capacity_for(1, {1, 2.0}) == 8);  // 2k * 2^ceil(2*1) = 2*4
  CHECK(threshold_for(1.0, {0, 2.0}) == doctest::Approx(kSqrt3));
  CHECK(threshold_for(1.0, {1, 2.0}) == doctest::Approx(kSqrt3 / 2));

  auto s = CoresetSketch::fresh(1.0, 2, {0, 2.0});
  CHECK(s.capacity == 4);
  CHECK(s.threshold == doctest::Approx(kSqrt3));
  CHECK(s.feasible());
  auto s2 = CoresetSketch::fresh(1.0, 1, {1, 2.0});
  CHECK(s2.capacity == 8);
  CHECK(s2.threshold == doctest::Approx(kSqrt3 / 2));
}

TEST_CASE("capacity eviction flips feasibility and it recovers after N arrivals") {
  const std::int64_t n = 40;
  WindowClock clock{n, 0};
  auto s = CoresetSketch::fresh(1.0, 1, {0, 2.0});  // capacity 2, threshold sqrt(3)
  auto feed = [&](std::initializer_list<double> c) {
    auto t = clock.advance(Point(c));
    s.update(t, clock);
    return t;
  };
  feed({0, 0});
  CHECK(s.feasible());
  feed({10, 0});
  CHECK(s.feasible());
  CHECK(s.active.size() == 2);
  feed({20, 0});  // evicts (0,0)@1; FT = 1 + 40
  CHECK_FALSE(s.feasible());
  CHECK(s.feasible_time == 1 + n);
  CHECK(s.active.size() == 2);
  CHECK_THROWS_AS(s.coreset(), std::logic_error);
  // After enough arrivals the lock expires (duplicates keep the set stable).
  while (clock.now < 1 + n) feed({20, 0});
  CHECK(s.feasible());
  CHECK(s.coreset().size() <= 4);
}

TEST_CASE("membership updates representatives without adding centers") {
  WindowClock clock{1000, 0};
  auto s = CoresetSketch::fresh(1.0, 1, {0, 2.0});
  auto t1 = clock.advance(Point{0, 0});
  s.update(t1, clock);
  auto t2 = clock.advance(Point{1, 0});
  s.update(t2, clock);
  auto t3 = clock.advance(Point{0.5, 0.5});
  s.update(t3, clock);
  REQUIRE(s.active.size() == 1);
  CHECK(same_tp(s.active[0], t1));
  CHECK(same_tp(s.reps[0], t3));
  CHECK(s.coreset().size() == 1);
}

TEST_CASE("coreset conformance to the reference interpreter") {
  StreamRng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const std::int64_t n = 5 + static_cast<std::int64_t>(rng.next_u64() % 30);
    const double r = 0.05 + 2.0 * rng.next_unit();
    const LowDimConfig cfg{trial % 5 == 0 ? 1 : 0, 2.0};
    GenParams gp;
    gp.dim = 2;
    gp.count = 250;
    gp.dup_fraction = 0.3;
    const auto pts = generate_stream(trial % 2 ? GenKind::duplicate_heavy : GenKind::uniform_ball,
                                     gp, rng.next_u64());
    WindowClock clock{n, 0};
    auto s = CoresetSketch::fresh(r, k, cfg);
    test::CoresetReference ref(r, s.threshold, s.capacity, n);
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      s.update(t, clock);
      ref.step(t);
      CHECK_MESSAGE(same_coreset_state(s, ref), "trial ", trial, " time ", t.time);
    }
  }
}

TEST_CASE("coreset invariants on random streams") {
  StreamRng rng(24601);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const std::int64_t n = 10 + static_cast<std::int64_t>(rng.next_u64() % 40);
    const double r = 0.05 + rng.next_unit();
    GenParams gp;
    gp.dim = 2;
    gp.count = 300;
    const auto pts = generate_stream(GenKind::uniform_ball, gp, rng.next_u64());
    WindowClock clock{n, 0};
    RingWindow win(n);
    auto s = CoresetSketch::fresh(r, k, {0, 2.0});
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      win.push(t);
      s.update(t, clock);
      const auto msg = test::check_coreset_invariants(s, win);
      CHECK_MESSAGE(msg.empty(), msg, " (r ", r, " time ", t.time, ")");
    }
  }
}

TEST_CASE("feasibility soundness: r >= r* implies feasible") {
  StreamRng rng(1357);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const std::int64_t n = 8 + static_cast<std::int64_t>(rng.next_u64() % 6);  // <= 13 for exact oracle
    GenParams gp;
    gp.dim = 2;
    gp.count = 200;
    const auto pts = generate_stream(GenKind::gaussian_clusters, gp, rng.next_u64());
    WindowClock clock{n, 0};
    RingWindow win(n);
    std::vector<CoresetSketch> sketches;
    for (double r : {0.02, 0.1, 0.4, 1.0, 3.0, 8.0}) sketches.push_back(CoresetSketch::fresh(r, k, {0, 2.0}));
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      win.push(t);
      const double rstar = exact_k_center(win.alive_points(), k).radius;
      for (auto& s : sketches) {
        s.update(t, clock);
        if (s.r >= rstar && rstar > 0) CHECK(s.feasible());
        if (s.r >= rstar) {
          // Coverage at 2*threshold when feasible.
          const auto msg = test::check_coreset_invariants(s, win);
          CHECK_MESSAGE(msg.empty(), msg);
        }
      }
    }
  }
}

TEST_CASE("witness states") {
  // Low-side witness example: capacity 2, last points at times 9 and 10.
  RLadder ladder(0.1, 100, 1, {0, 2.0});
  WindowClock clock{100, 0};
  // Spread-out points so every arrival becomes its own active center at
  // small estimates.
  std::vector<double> xs{0, 5, 11, 18, 26, 35, 45, 56, 68, 81};
  for (double x : xs) {
    auto t = clock.advance(Point{x, 0});
    ladder.observe(t, clock);
  }
  bool first = true;
  bool saw_locked_bottom = false;
  ladder.for_each_sketch([&](std::int64_t, const CoresetSketch& s) {
    if (first) {
      // Bottom sketch: every recent arrival is its own active center and the
      // previous one is the eviction victim.
      first = false;
      CHECK_FALSE(s.feasible());
      saw_locked_bottom = true;
      CHECK(s.active.size() == 2);
      CHECK(s.feasible_time == s.active.front().time - 1 + 100);
    } else if (!s.feasible()) {
      CHECK(s.feasible_time > s.current_time);
    }
  });
  CHECK(saw_locked_bottom);

  // High-side witness: a single active center, feasible.
  auto hi = RLadder(0.1, 100, 2, {0, 2.0});
  (void)hi;
  auto ws = CoresetSketch::fresh(4.0, 2, {0, 2.0});
  ws.active.push_back(tp({1, 1}, 7));
  ws.reps.push_back(tp({1, 1}, 7));
  ws.current_time = 7;
  CHECK(ws.feasible());
  CHECK(ws.coreset().size() == 1);
}

TEST_CASE("rladder solves with coverage and ratio on random streams") {
  StreamRng rng(9090);
  for (int trial = 0; trial < 10; ++trial) {
    const double eps = trial % 2 ? 0.1 : 0.3;
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const std::int64_t n = 8 + static_cast<std::int64_t>(rng.next_u64() % 6);
    GenParams gp;
    gp.dim = 2;
    gp.count = 350;
    const auto kind = trial % 2 ? GenKind::gaussian_clusters : GenKind::uniform_ball;
    const auto pts = generate_stream(kind, gp, rng.next_u64());
    RLadder ladder(eps, n, k, {0, 2.0});
    WindowClock clock{n, 0};
    RingWindow win(n);
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      win.push(t);
      ladder.observe(t, clock);
      for (SolverKind solver : {SolverKind::exact_c1, SolverKind::greedy_c2}) {
        const auto sol = ladder.solve(solver);
        CHECK(static_cast<int>(sol.balls.size()) <= std::max(k, 1));
        CHECK(test::covers_all(sol.balls, win.alive_points(), 1e-9));
        const double rstar = exact_k_center(win.alive_points(), k).radius;
        if (rstar > 0 && !sol.fell_back) {
          const double c = solver == SolverKind::exact_c1 ? 1.0 : 2.0;
          CHECK(sol.balls.front().radius / rstar <= (c + 2 * kSqrt3) * (1 + eps) + 1e-6);
        }
      }
    }
  }
}

TEST_CASE("rladder respects space bounds") {
  StreamRng rng(600613);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 4);
    GenParams gp;
    gp.dim = 2;
    gp.count = 400;
    gp.dup_fraction = 0.5;
    const auto kind = trial % 2 ? GenKind::duplicate_heavy : GenKind::uniform_ball;
    const auto pts = generate_stream(kind, gp, rng.next_u64());
    RLadder ladder(0.15, 60, k, {0, 2.0});
    WindowClock clock{60, 0};
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      ladder.observe(t, clock);
      ladder.for_each_sketch([&](std::int64_t, const CoresetSketch& s) {
        CHECK(static_cast<std::int64_t>(s.active.size()) <= 2 * k);
        CHECK(static_cast<std::int64_t>(s.reps.size() + s.orphans.size()) <= 4 * k);
      });
    }
  }
}

TEST_CASE("k at least distinct points gives tiny radius") {
  RLadder ladder(0.2, 50, 4, {0, 2.0});
  WindowClock clock{50, 0};
  std::vector<Point> pts{Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}};
  for (int rep = 0; rep < 10; ++rep) {
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      ladder.observe(t, clock);
    }
  }
  const auto sol = ladder.solve(SolverKind::greedy_c2);
  CHECK(test::covers_all(sol.balls, pts, 1e-9));
  REQUIRE(sol.r_used > 0.0);
  // Solver radius 0 on the coreset leaves only the 2*threshold enlargement.
  CHECK(sol.balls.front().radius <= 2.0 * threshold_for(sol.r_used, {0, 2.0}) + 1e-12);
}

TEST_CASE("degenerate stream answers a zero ball") {
  RLadder ladder(0.3, 10, 2, {0, 2.0});
  WindowClock clock{10, 0};
  for (int i = 0; i < 5; ++i) {
    auto t = clock.advance(Point{3, 3});
    ladder.observe(t, clock);
    auto sol = ladder.solve(SolverKind::greedy_c2);
    REQUIRE(sol.balls.size() == 1);
    CHECK(sol.balls[0].radius == 0.0);
    CHECK(coords_equal(sol.balls[0].center, Point{3, 3}));
  }
}

TEST_CASE("low-dimension configuration end to end") {
  StreamRng rng(77077);
  const LowDimConfig cfg{1, 5.54};  // t=1, d=2 default bound
  for (int trial = 0; trial < 4; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 2);
    const std::int64_t n = 8 + static_cast<std::int64_t>(rng.next_u64() % 5);
    GenParams gp;
    gp.dim = 2;
    gp.count = 250;
    const auto pts = generate_stream(GenKind::uniform_ball, gp, rng.next_u64());
    RLadder ladder(0.1, n, k, cfg);
    WindowClock clock{n, 0};
    RingWindow win(n);
    for (const auto& p : pts) {
      auto t = clock.advance(p);
      win.push(t);
      ladder.observe(t, clock);
      const auto sol = ladder.solve(SolverKind::exact_c1);
      CHECK(test::covers_all(sol.balls, win.alive_points(), 1e-9));
      const double rstar = exact_k_center(win.alive_points(), k).radius;
      if (rstar > 0 && !sol.fell_back)
        CHECK(sol.balls.front().radius / rstar <= (1 + kSqrt3) * (1 + 0.1) + 1e-6);
    }
  }
}
