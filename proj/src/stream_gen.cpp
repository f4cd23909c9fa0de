#include "swkc/stream_gen.hpp"

#include <cmath>
#include <stdexcept>

namespace swkc {

std::uint64_t StreamRng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double StreamRng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double StreamRng::next_gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_unit();
  while (u1 <= 0.0) u1 = next_unit();
  const double u2 = next_unit();
  const double m = std::sqrt(-2.0 * std::log(u1));
  spare_ = m * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return m * std::cos(2.0 * M_PI * u2);
}

std::vector<double> StreamRng::in_ball(int dim, double radius) {
  while (true) {
    std::vector<double> c(dim);
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      c[i] = radius * (2.0 * next_unit() - 1.0);
      s += c[i] * c[i];
    }
    if (s <= radius * radius) return c;
  }
}

std::vector<Point> generate_stream(GenKind kind, const GenParams& p, std::uint64_t seed) {
  if (p.dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (p.count < 0) throw std::invalid_argument("count must be >= 0");
  StreamRng rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(p.count));

  switch (kind) {
    case GenKind::uniform_ball: {
      if (!(p.radius > 0.0)) throw std::invalid_argument("radius must be positive");
      for (std::int64_t i = 0; i < p.count; ++i) out.emplace_back(rng.in_ball(p.dim, p.radius));
      break;
    }
    case GenKind::gaussian_clusters: {
      if (p.clusters < 1) throw std::invalid_argument("clusters must be >= 1");
      std::vector<std::vector<double>> centers(p.clusters);
      for (auto& c : centers) c = rng.in_ball(p.dim, p.separation);
      int cur = 0;
      for (std::int64_t i = 0; i < p.count; ++i) {
        if (rng.next_unit() < p.switch_prob)
          cur = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(p.clusters));
        std::vector<double> c(centers[cur]);
        for (int d = 0; d < p.dim; ++d) c[d] += p.spread * rng.next_gauss();
        out.emplace_back(std::move(c));
      }
      break;
    }
    case GenKind::drifting: {
      std::vector<double> origin(p.dim, 0.0);
      std::vector<double> dir = rng.in_ball(p.dim, 1.0);
      for (std::int64_t i = 0; i < p.count; ++i) {
        for (int d = 0; d < p.dim; ++d) {
          dir[d] += 0.1 * rng.next_gauss();
        }
        double norm = 0.0;
        for (double v : dir) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0)
          for (auto& v : dir) v /= norm;
        for (int d = 0; d < p.dim; ++d) origin[d] += p.drift * dir[d];
        std::vector<double> c = rng.in_ball(p.dim, p.noise);
        for (int d = 0; d < p.dim; ++d) c[d] += origin[d];
        out.emplace_back(std::move(c));
      }
      break;
    }
    case GenKind::duplicate_heavy: {
      if (!(p.radius > 0.0)) throw std::invalid_argument("radius must be positive");
      for (std::int64_t i = 0; i < p.count; ++i) {
        if (!out.empty() && rng.next_unit() < p.dup_fraction) {
          out.push_back(out.back());  // exact repeat
        } else {
          out.emplace_back(rng.in_ball(p.dim, p.radius));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace swkc
