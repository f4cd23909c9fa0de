#include "swkc/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace swkc {

using nlohmann::json;

namespace {

std::string dtos(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double stod_exact(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::one_center: return "one_center";
    case Mode::k_center: return "k_center";
    case Mode::diameter_baseline: return "diameter_baseline";
  }
  return "one_center";
}

Mode mode_from(const std::string& s) {
  if (s == "one_center") return Mode::one_center;
  if (s == "k_center") return Mode::k_center;
  if (s == "diameter_baseline") return Mode::diameter_baseline;
  throw std::runtime_error("unknown mode: " + s);
}

std::string solver_name(SolverKind s) {
  return s == SolverKind::exact_c1 ? "exact_c1" : "greedy_c2";
}

SolverKind solver_from(const std::string& s) {
  if (s == "exact_c1") return SolverKind::exact_c1;
  if (s == "greedy_c2") return SolverKind::greedy_c2;
  throw std::runtime_error("unknown solver: " + s);
}

json tp_to_json(const TimedPoint& tp) {
  json coords = json::array();
  for (double c : tp.point.coords) coords.push_back(dtos(c));
  return json{{"t", tp.time}, {"x", coords}};
}

TimedPoint tp_from_json(const json& j) {
  std::vector<double> coords;
  for (const auto& c : j.at("x")) coords.push_back(stod_exact(c.get<std::string>()));
  return TimedPoint{Point(std::move(coords)), j.at("t").get<std::int64_t>()};
}

json sketch_to_json(const DiameterSketch& s) {
  json j{{"gamma", dtos(s.gamma)},
         {"c_old", tp_to_json(s.c_old)},
         {"q", tp_to_json(s.q)},
         {"r", tp_to_json(s.r)},
         {"b", tp_to_json(s.b)}};
  j["c_new"] = s.c_new ? tp_to_json(*s.c_new) : json(nullptr);
  return j;
}

DiameterSketch sketch_from_json(const json& j) {
  DiameterSketch s;
  s.gamma = stod_exact(j.at("gamma").get<std::string>());
  s.c_old = tp_from_json(j.at("c_old"));
  s.q = tp_from_json(j.at("q"));
  s.r = tp_from_json(j.at("r"));
  s.b = tp_from_json(j.at("b"));
  if (!j.at("c_new").is_null()) s.c_new = tp_from_json(j.at("c_new"));
  return s;
}

json tp_list_to_json(const std::vector<TimedPoint>& v) {
  json a = json::array();
  for (const auto& tp : v) a.push_back(tp_to_json(tp));
  return a;
}

std::vector<TimedPoint> tp_list_from_json(const json& j) {
  std::vector<TimedPoint> v;
  for (const auto& e : j) v.push_back(tp_from_json(e));
  return v;
}

json cs_to_json(const CoresetSketch& s) {
  return json{{"r", dtos(s.r)},
              {"k", s.k},
              {"t", s.cfg.t},
              {"D", dtos(s.cfg.doubling_exponent)},
              {"active", tp_list_to_json(s.active)},
              {"reps", tp_list_to_json(s.reps)},
              {"orphans", tp_list_to_json(s.orphans)},
              {"ft", s.feasible_time},
              {"ct", s.current_time}};
}

CoresetSketch cs_from_json(const json& j) {
  LowDimConfig cfg{j.at("t").get<int>(), stod_exact(j.at("D").get<std::string>())};
  CoresetSketch s = CoresetSketch::fresh(stod_exact(j.at("r").get<std::string>()),
                                         j.at("k").get<int>(), cfg);
  s.active = tp_list_from_json(j.at("active"));
  s.reps = tp_list_from_json(j.at("reps"));
  s.orphans = tp_list_from_json(j.at("orphans"));
  s.feasible_time = j.at("ft").get<std::int64_t>();
  s.current_time = j.at("ct").get<std::int64_t>();
  return s;
}

}  // namespace

struct SnapshotAccess {
  static json gamma_to_json(const GammaLadder& g) {
    json sketches = json::array();
    for (const auto& [i, s] : g.sketches_) sketches.push_back(json{{"i", i}, {"s", sketch_to_json(s)}});
    json j{{"epsilon", dtos(g.grid_.epsilon())},
           {"window", g.window_},
           {"sketches", sketches},
           {"i_low", g.i_low_},
           {"i_est", g.i_est_},
           {"i_high", g.i_high_},
           {"active", g.active_},
           {"has_pregrid", g.has_pregrid_},
           {"has_prev", g.has_prev_},
           {"last_distinct", g.last_distinct_},
           {"degenerate", g.degenerate_},
           {"count", g.count_}};
    j["pregrid"] = g.has_pregrid_ ? sketch_to_json(g.pregrid_) : json(nullptr);
    j["prev"] = g.has_prev_ ? tp_to_json(g.prev_) : json(nullptr);
    return j;
  }

  static GammaLadder gamma_from_json(const json& j) {
    GammaLadder g(stod_exact(j.at("epsilon").get<std::string>()), j.at("window").get<std::int64_t>());
    for (const auto& e : j.at("sketches"))
      g.sketches_.emplace(e.at("i").get<std::int64_t>(), sketch_from_json(e.at("s")));
    g.i_low_ = j.at("i_low").get<std::int64_t>();
    g.i_est_ = j.at("i_est").get<std::int64_t>();
    g.i_high_ = j.at("i_high").get<std::int64_t>();
    g.active_ = j.at("active").get<bool>();
    g.has_pregrid_ = j.at("has_pregrid").get<bool>();
    if (g.has_pregrid_) g.pregrid_ = sketch_from_json(j.at("pregrid"));
    g.has_prev_ = j.at("has_prev").get<bool>();
    if (g.has_prev_) g.prev_ = tp_from_json(j.at("prev"));
    g.last_distinct_ = j.at("last_distinct").get<std::int64_t>();
    g.degenerate_ = j.at("degenerate").get<bool>();
    g.count_ = j.at("count").get<std::int64_t>();
    return g;
  }

  static json r_to_json(const RLadder& r) {
    json sketches = json::array();
    for (const auto& [i, s] : r.sketches_) sketches.push_back(json{{"i", i}, {"s", cs_to_json(s)}});
    json recent = json::array();
    for (const auto& tp : r.recent_) recent.push_back(tp_to_json(tp));
    json j{{"epsilon", dtos(r.grid_.epsilon())},
           {"window", r.window_},
           {"k", r.k_},
           {"t", r.cfg_.t},
           {"D", dtos(r.cfg_.doubling_exponent)},
           {"companion", gamma_to_json(r.companion_)},
           {"sketches", sketches},
           {"recent", recent},
           {"i_low", r.i_low_},
           {"i_high", r.i_high_},
           {"active", r.active_},
           {"has_pregrid", r.has_pregrid_},
           {"count", r.count_}};
    j["pregrid"] = r.has_pregrid_ ? cs_to_json(r.pregrid_) : json(nullptr);
    return j;
  }

  static RLadder r_from_json(const json& j) {
    LowDimConfig cfg{j.at("t").get<int>(), stod_exact(j.at("D").get<std::string>())};
    RLadder r(stod_exact(j.at("epsilon").get<std::string>()), j.at("window").get<std::int64_t>(),
              j.at("k").get<int>(), cfg);
    r.companion_ = gamma_from_json(j.at("companion"));
    for (const auto& e : j.at("sketches"))
      r.sketches_.emplace(e.at("i").get<std::int64_t>(), cs_from_json(e.at("s")));
    for (const auto& e : j.at("recent")) r.recent_.push_back(tp_from_json(e));
    r.i_low_ = j.at("i_low").get<std::int64_t>();
    r.i_high_ = j.at("i_high").get<std::int64_t>();
    r.active_ = j.at("active").get<bool>();
    r.has_pregrid_ = j.at("has_pregrid").get<bool>();
    if (r.has_pregrid_) r.pregrid_ = cs_from_json(j.at("pregrid"));
    r.count_ = j.at("count").get<std::int64_t>();
    return r;
  }
};

void RunConfig::validate() const {
  if (window_size < 1) throw std::invalid_argument("config: window size must be >= 1");
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("config: epsilon must be positive");
  if (lowdim_t < 0) throw std::invalid_argument("config: t must be >= 0");
  if (doubling_exponent < 0.0) throw std::invalid_argument("config: doubling exponent must be >= 0");
  if (query_every < 1) throw std::invalid_argument("config: query_every must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
}

std::string QueryRecord::to_ndjson() const {
  json j;
  j["at_time"] = at_time;
  j["radius"] = radius;
  json cs = json::array();
  for (const auto& c : centers) {
    json coords = json::array();
    for (double v : c.coords) coords.push_back(v);
    cs.push_back(coords);
  }
  j["centers"] = cs;
  j["ladder_size"] = ladder_size;
  if (coreset_size) j["coreset_size"] = *coreset_size;
  if (feasible_r) j["feasible_r"] = *feasible_r;
  if (oracle_radius) j["oracle_radius"] = *oracle_radius;
  if (ratio) j["ratio"] = *ratio;
  if (oracle_fallback) j["oracle_fallback"] = true;
  return j.dump();
}

RunState::RunState(RunConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  clock_.window_size = cfg_.window_size;
}

void RunState::ensure_ladders(int dim) {
  const double d_exp = cfg_.doubling_exponent > 0.0 ? cfg_.doubling_exponent : 2.77 * dim;
  if (cfg_.mode == Mode::k_center) {
    r_.emplace(cfg_.epsilon, cfg_.window_size, cfg_.k, LowDimConfig{cfg_.lowdim_t, d_exp});
  } else {
    gamma_.emplace(cfg_.epsilon, cfg_.window_size);
  }
}

std::optional<QueryRecord> RunState::ingest(Point p) {
  if (dim_ == 0) {
    dim_ = static_cast<int>(p.dim());
    ensure_ladders(dim_);
  } else if (static_cast<int>(p.dim()) != dim_) {
    throw std::invalid_argument("dimension changed mid-stream");
  }
  TimedPoint tp = clock_.advance(std::move(p));
  ++n_;
  if (cfg_.oracle_checks) {
    ring_.push_back(tp);
    while (static_cast<std::int64_t>(ring_.size()) > cfg_.window_size) ring_.pop_front();
  }
  if (cfg_.mode == Mode::k_center) {
    r_->observe(tp, clock_);
  } else {
    gamma_->observe(tp, clock_);
  }
  if (n_ % cfg_.query_every == 0) return query();
  return std::nullopt;
}

std::vector<Point> RunState::oracle_window() const {
  std::vector<Point> alive;
  alive.reserve(ring_.size());
  for (const auto& tp : ring_) alive.push_back(tp.point);
  return alive;
}

QueryRecord RunState::query() const {
  if (n_ == 0) throw std::logic_error("query: empty stream");
  QueryRecord rec;
  rec.at_time = clock_.now;

  if (cfg_.mode == Mode::k_center) {
    const KCenterSolution sol = r_->solve(cfg_.solver);
    rec.radius = sol.balls.empty() ? 0.0 : sol.balls.front().radius;
    for (const auto& b : sol.balls) rec.centers.push_back(b.center);
    rec.ladder_size = static_cast<std::int64_t>(r_->sketch_count());
    rec.coreset_size = sol.coreset_size;
    if (sol.r_used > 0.0) rec.feasible_r = sol.r_used;
  } else {
    const Ball b = cfg_.mode == Mode::one_center ? gamma_->answer() : gamma_->baseline();
    rec.radius = b.radius;
    rec.centers.push_back(b.center);
    rec.ladder_size = static_cast<std::int64_t>(gamma_->sketch_count());
  }

  if (cfg_.oracle_checks) {
    const std::vector<Point> alive = oracle_window();
    if (!alive.empty()) {
      if (cfg_.mode == Mode::k_center) {
        if (alive.size() <= kExactKCenterCap) {
          rec.oracle_radius = exact_k_center(alive, cfg_.k).radius;
        } else {
          rec.oracle_radius = greedy_2approx_k_center(alive, cfg_.k).radius;
          rec.oracle_fallback = true;
        }
      } else {
        rec.oracle_radius = min_enclosing_ball(alive).ball.radius;
      }
      if (*rec.oracle_radius > 0.0) rec.ratio = rec.radius / *rec.oracle_radius;
    }
  }
  return rec;
}

std::string RunState::snapshot() const {
  json j;
  j["version"] = 1;
  j["config"] = json{{"mode", mode_name(cfg_.mode)},
                     {"window", cfg_.window_size},
                     {"k", cfg_.k},
                     {"epsilon", dtos(cfg_.epsilon)},
                     {"t", cfg_.lowdim_t},
                     {"doubling_exponent", dtos(cfg_.doubling_exponent)},
                     {"solver", solver_name(cfg_.solver)},
                     {"query_every", cfg_.query_every},
                     {"oracle_checks", cfg_.oracle_checks},
                     {"tolerance", dtos(cfg_.tolerance)},
                     {"format", cfg_.format == StreamFormat::csv ? "csv" : "ndjson"},
                     {"seed", cfg_.seed}};
  j["now"] = clock_.now;
  j["n"] = n_;
  j["dim"] = dim_;
  j["gamma"] = gamma_ ? SnapshotAccess::gamma_to_json(*gamma_) : json(nullptr);
  j["r"] = r_ ? SnapshotAccess::r_to_json(*r_) : json(nullptr);
  json ring = json::array();
  for (const auto& tp : ring_) ring.push_back(tp_to_json(tp));
  j["ring"] = ring;
  return j.dump();
}

RunState RunState::restore(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("snapshot: corrupt payload: ") + e.what());
  }
  try {
    if (!j.contains("version") || j.at("version").get<int>() != 1)
      throw std::runtime_error("snapshot: version mismatch");
    const json& c = j.at("config");
    RunConfig cfg;
    cfg.mode = mode_from(c.at("mode").get<std::string>());
    cfg.window_size = c.at("window").get<std::int64_t>();
    cfg.k = c.at("k").get<int>();
    cfg.epsilon = stod_exact(c.at("epsilon").get<std::string>());
    cfg.lowdim_t = c.at("t").get<int>();
    cfg.doubling_exponent = stod_exact(c.at("doubling_exponent").get<std::string>());
    cfg.solver = solver_from(c.at("solver").get<std::string>());
    cfg.query_every = c.at("query_every").get<std::int64_t>();
    cfg.oracle_checks = c.at("oracle_checks").get<bool>();
    cfg.tolerance = stod_exact(c.at("tolerance").get<std::string>());
    cfg.format = c.at("format").get<std::string>() == "ndjson" ? StreamFormat::ndjson : StreamFormat::csv;
    cfg.seed = c.at("seed").get<std::uint64_t>();

    RunState st(cfg);
    st.clock_.now = j.at("now").get<std::int64_t>();
    st.n_ = j.at("n").get<std::int64_t>();
    st.dim_ = j.at("dim").get<int>();
    if (!j.at("gamma").is_null()) st.gamma_ = SnapshotAccess::gamma_from_json(j.at("gamma"));
    if (!j.at("r").is_null()) st.r_ = SnapshotAccess::r_from_json(j.at("r"));
    for (const auto& e : j.at("ring")) st.ring_.push_back(tp_from_json(e));
    return st;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("snapshot: corrupt payload: ") + e.what());
  }
}

std::vector<QueryRecord> run(const RunConfig& cfg, std::istream& input, std::ostream& report) {
  cfg.validate();
  RunState st(cfg);
  StreamParser parser(input, cfg.format);
  std::vector<QueryRecord> out;
  while (auto p = parser.next()) {
    auto rec = st.ingest(std::move(*p));
    if (rec) {
      report << rec->to_ndjson() << '\n';
      out.push_back(std::move(*rec));
    }
  }
  return out;
}

}  // namespace swkc
