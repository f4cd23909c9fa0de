#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swkc/k_center.hpp"
#include "swkc/one_center.hpp"
#include "swkc/window.hpp"

namespace swkc {

enum class Mode { one_center, k_center, diameter_baseline };

struct RunConfig {
  Mode mode = Mode::one_center;
  std::int64_t window_size = 100;
  int k = 1;
  double epsilon = 0.1;
  int lowdim_t = 0;
  double doubling_exponent = 0.0;  // 0 -> 2.77 * d once the dimension is known
  SolverKind solver = SolverKind::greedy_c2;
  std::int64_t query_every = 1;
  bool oracle_checks = false;
  double tolerance = kDefaultTolerance;
  StreamFormat format = StreamFormat::csv;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct QueryRecord {
  std::int64_t at_time = 0;
  double radius = 0.0;
  std::vector<Point> centers;
  std::optional<double> oracle_radius;
  std::optional<double> ratio;
  std::int64_t ladder_size = 0;
  std::optional<std::int64_t> coreset_size;
  std::optional<double> feasible_r;
  bool oracle_fallback = false;  // k-center oracle used greedy beyond the cap

  std::string to_ndjson() const;
};

struct SnapshotAccess;

// One streaming run: clock, the mode's ladder, and (under oracle_checks) a
// test-only ring buffer of the window for reference radii. Sketches never
// read the ring buffer.
class RunState {
 public:
  explicit RunState(RunConfig cfg);

  // Feed one point; returns a record on query boundaries.
  std::optional<QueryRecord> ingest(Point p);

  // Answer at the current arrival boundary. Throws before the first point.
  QueryRecord query() const;

  std::string snapshot() const;
  static RunState restore(const std::string& bytes);

  const RunConfig& config() const { return cfg_; }
  std::int64_t points_seen() const { return n_; }
  const GammaLadder* gamma_ladder() const { return gamma_ ? &*gamma_ : nullptr; }
  const RLadder* r_ladder() const { return r_ ? &*r_ : nullptr; }
  std::vector<Point> oracle_window() const;

 private:
  friend struct SnapshotAccess;

  void ensure_ladders(int dim);

  RunConfig cfg_;
  WindowClock clock_;
  std::optional<GammaLadder> gamma_;
  std::optional<RLadder> r_;
  std::deque<TimedPoint> ring_;
  std::int64_t n_ = 0;
  int dim_ = 0;
};

// Parse, ingest, emit one NDJSON record per query boundary to `report`.
std::vector<QueryRecord> run(const RunConfig& cfg, std::istream& input, std::ostream& report);

}  // namespace swkc
