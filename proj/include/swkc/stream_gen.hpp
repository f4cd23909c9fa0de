#pragma once

#include <cstdint>
#include <vector>

#include "swkc/geometry.hpp"

namespace swkc {

enum class GenKind { uniform_ball, gaussian_clusters, drifting, duplicate_heavy };

struct GenParams {
  int dim = 2;
  std::int64_t count = 1000;
  double radius = 1.0;        // uniform_ball, duplicate_heavy base
  int clusters = 3;           // gaussian_clusters
  double spread = 0.05;       // gaussian_clusters: within-cluster stddev
  double separation = 4.0;    // gaussian_clusters: center scale
  double switch_prob = 0.02;  // gaussian_clusters: per-point cluster hop
  double drift = 0.01;        // drifting: per-step origin motion
  double noise = 0.2;         // drifting: spread around the moving origin
  double dup_fraction = 0.5;  // duplicate_heavy: probability of an exact repeat
};

// Deterministic pseudo-random stream; same (kind, params, seed) gives an
// identical sequence on every run.
std::vector<Point> generate_stream(GenKind kind, const GenParams& params, std::uint64_t seed);

// Hand-rolled generator so streams do not depend on libstdc++ distribution
// internals.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_unit();             // [0, 1)
  double next_gauss();            // standard normal (Box-Muller)
  std::vector<double> in_ball(int dim, double radius);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swkc
