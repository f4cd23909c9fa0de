#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "swkc/harness.hpp"
#include "swkc/stream_gen.hpp"

namespace {

void write_points(const std::vector<swkc::Point>& pts, swkc::StreamFormat fmt, std::ostream& out) {
  char buf[40];
  for (const auto& p : pts) {
    if (fmt == swkc::StreamFormat::csv) {
      for (std::size_t i = 0; i < p.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", p[i]);
        out << (i ? "," : "") << buf;
      }
      out << '\n';
    } else {
      out << "{\"x\":[";
      for (std::size_t i = 0; i < p.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", p[i]);
        out << (i ? "," : "") << buf;
      }
      out << "]}\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window 1-center / k-center streaming toolkit"};
  app.require_subcommand(1);

  // run: ingest a point stream, emit NDJSON query records on stdout.
  auto* run_cmd = app.add_subcommand("run", "Run a sliding-window clustering stream");
  std::string mode = "one_center", solver = "greedy_c2", format = "csv";
  std::string input_path, snapshot_out, snapshot_in;
  swkc::RunConfig cfg;
  run_cmd->add_option("--mode", mode, "one_center | k_center | diameter_baseline");
  run_cmd->add_option("--window", cfg.window_size, "window size N")->check(CLI::PositiveNumber);
  run_cmd->add_option("--k", cfg.k, "number of centers (k_center mode)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--epsilon", cfg.epsilon, "estimate grid parameter")->check(CLI::PositiveNumber);
  run_cmd->add_option("--t", cfg.lowdim_t, "low-dimension trade-off parameter")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--doubling-exponent", cfg.doubling_exponent,
                      "doubling exponent bound (default 2.77*d)");
  run_cmd->add_option("--solver", solver, "exact_c1 | greedy_c2");
  run_cmd->add_option("--query-every", cfg.query_every, "emit a record every Q arrivals")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--oracle-checks", cfg.oracle_checks, "compute reference radii per query");
  run_cmd->add_option("--tolerance", cfg.tolerance, "containment tolerance")->check(CLI::PositiveNumber);
  run_cmd->add_option("--format", format, "csv | ndjson");
  run_cmd->add_option("--seed", cfg.seed, "generator seed (recorded in snapshots)");
  run_cmd->add_option("--input", input_path, "input file (default: stdin)");
  run_cmd->add_option("--snapshot-out", snapshot_out, "write state snapshot after the run");
  run_cmd->add_option("--snapshot-in", snapshot_in, "resume from a state snapshot");

  // gen: deterministic stream generator.
  auto* gen_cmd = app.add_subcommand("gen", "Generate a deterministic point stream");
  std::string kind = "uniform_ball", gen_format = "csv";
  swkc::GenParams gp;
  std::uint64_t gen_seed = 0;
  gen_cmd->add_option("--kind", kind, "uniform_ball | gaussian_clusters | drifting | duplicate_heavy");
  gen_cmd->add_option("--n", gp.count, "number of points")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--d", gp.dim, "dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "rng seed");
  gen_cmd->add_option("--radius", gp.radius, "ball radius");
  gen_cmd->add_option("--clusters", gp.clusters, "cluster count");
  gen_cmd->add_option("--spread", gp.spread, "within-cluster stddev");
  gen_cmd->add_option("--separation", gp.separation, "cluster center scale");
  gen_cmd->add_option("--switch-prob", gp.switch_prob, "per-point cluster hop probability");
  gen_cmd->add_option("--drift", gp.drift, "per-step origin motion");
  gen_cmd->add_option("--noise", gp.noise, "spread around the drifting origin");
  gen_cmd->add_option("--dup-fraction", gp.dup_fraction, "probability of an exact repeat");
  gen_cmd->add_option("--format", gen_format, "csv | ndjson");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      swkc::GenKind gk;
      if (kind == "uniform_ball") gk = swkc::GenKind::uniform_ball;
      else if (kind == "gaussian_clusters") gk = swkc::GenKind::gaussian_clusters;
      else if (kind == "drifting") gk = swkc::GenKind::drifting;
      else if (kind == "duplicate_heavy") gk = swkc::GenKind::duplicate_heavy;
      else throw std::invalid_argument("unknown stream kind: " + kind);
      const auto fmt = gen_format == "ndjson" ? swkc::StreamFormat::ndjson : swkc::StreamFormat::csv;
      write_points(swkc::generate_stream(gk, gp, gen_seed), fmt, std::cout);
      return 0;
    }

    if (mode == "one_center") cfg.mode = swkc::Mode::one_center;
    else if (mode == "k_center") cfg.mode = swkc::Mode::k_center;
    else if (mode == "diameter_baseline") cfg.mode = swkc::Mode::diameter_baseline;
    else throw std::invalid_argument("unknown mode: " + mode);
    cfg.solver = solver == "exact_c1" ? swkc::SolverKind::exact_c1 : swkc::SolverKind::greedy_c2;
    if (solver != "exact_c1" && solver != "greedy_c2")
      throw std::invalid_argument("unknown solver: " + solver);
    if (format == "csv") cfg.format = swkc::StreamFormat::csv;
    else if (format == "ndjson") cfg.format = swkc::StreamFormat::ndjson;
    else throw std::invalid_argument("unknown format: " + format);
    cfg.validate();

    swkc::RunState state = [&] {
      if (snapshot_in.empty()) return swkc::RunState(cfg);
      std::ifstream in(snapshot_in, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open snapshot: " + snapshot_in);
      std::ostringstream buf;
      buf << in.rdbuf();
      return swkc::RunState::restore(buf.str());
    }();

    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input_path.empty()) {
      file.open(input_path);
      if (!file) throw std::runtime_error("cannot open input: " + input_path);
      in = &file;
    }

    swkc::StreamParser parser(*in, cfg.format);
    while (auto p = parser.next()) {
      auto rec = state.ingest(std::move(*p));
      if (rec) std::cout << rec->to_ndjson() << '\n';
    }

    if (!snapshot_out.empty()) {
      std::ofstream out(snapshot_out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open snapshot output: " + snapshot_out);
      out << state.snapshot();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
