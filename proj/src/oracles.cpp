#include "swkc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swkc {

namespace {

// Ball with every support point on its boundary: circumsphere restricted to
// the affine hull of the support. Solves the Gram system
//   G lambda = rhs,  G_ij = v_i.v_j,  rhs_i = |v_i|^2 / 2,
// center = s0 + sum lambda_i v_i. Near-singular columns (affinely dependent
// support) are skipped; the final inflation pass in min_enclosing_ball
// absorbs the slack.
std::optional<Ball> ball_of_support(const std::vector<const Point*>& sup) {
  if (sup.empty()) return std::nullopt;
  const std::size_t d = sup[0]->dim();
  const std::size_t m = sup.size() - 1;
  if (m == 0) return Ball{*sup[0], 0.0};

  std::vector<std::vector<double>> v(m, std::vector<double>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) v[i][j] = sup[i + 1]->coords[j] - sup[0]->coords[j];

  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += v[i][c] * v[j][c];
      a[i][j] = s;
      scale = std::max(scale, std::abs(s));
    }
    a[i][m] = 0.5 * a[i][i];
  }
  if (scale == 0.0) return Ball{*sup[0], 0.0};  // all support points coincide

  std::vector<std::size_t> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = i;
  std::vector<double> lambda(m, 0.0);
  std::vector<std::size_t> pivot_col(m, m);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t best = rank;
    for (std::size_t i = rank; i < m; ++i)
      if (std::abs(a[rows[i]][col]) > std::abs(a[rows[best]][col])) best = i;
    if (std::abs(a[rows[best]][col]) < 1e-10 * scale) continue;  // dependent direction
    std::swap(rows[rank], rows[best]);
    const std::size_t pr = rows[rank];
    for (std::size_t i = rank + 1; i < m; ++i) {
      const std::size_t ri = rows[i];
      const double f = a[ri][col] / a[pr][col];
      for (std::size_t j = col; j <= m; ++j) a[ri][j] -= f * a[pr][j];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (std::size_t i = rank; i-- > 0;) {
    const std::size_t ri = rows[i];
    const std::size_t col = pivot_col[i];
    double s = a[ri][m];
    for (std::size_t j = col + 1; j < m; ++j) s -= a[ri][j] * lambda[j];
    lambda[col] = s / a[ri][col];
  }

  std::vector<double> center(sup[0]->coords);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < d; ++c) center[c] += lambda[i] * v[i][c];
  Point cp(std::move(center));
  return Ball{cp, distance(cp, *sup[0])};
}

bool inside(const std::optional<Ball>& b, const Point& p) {
  if (!b) return false;
  return distance(b->center, p) <= b->radius * (1.0 + 1e-12) + 1e-300;
}

std::optional<Ball> welzl(std::vector<const Point*>& pts, std::size_t n,
                          std::vector<const Point*>& sup, std::size_t d) {
  if (n == 0 || sup.size() == d + 1) return ball_of_support(sup);
  auto b = welzl(pts, n - 1, sup, d);
  const Point* p = pts[n - 1];
  if (inside(b, *p)) return b;
  sup.push_back(p);
  b = welzl(pts, n - 1, sup, d);
  sup.pop_back();
  std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n - 1),
              pts.begin() + static_cast<std::ptrdiff_t>(n));
  return b;
}

void require_nonempty(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
}

void require_uniform_dim(std::span<const Point> points) {
  for (const auto& p : points)
    if (p.dim() != points[0].dim()) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

MebResult min_enclosing_ball(std::span<const Point> points) {
  require_nonempty(points);
  require_uniform_dim(points);
  const std::size_t d = points[0].dim();

  std::vector<const Point*> pts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) pts[i] = &points[i];
  std::vector<const Point*> sup;
  auto b = welzl(pts, pts.size(), sup, d);
  if (!b) b = Ball{points[0], 0.0};

  // Exact containment: radius is the true max distance from the center.
  double rad = 0.0;
  for (const auto& p : points) rad = std::max(rad, distance(b->center, p));
  b->radius = rad;
  return MebResult{*b, d > 3};
}

KCenterResult greedy_2approx_k_center(std::span<const Point> points, int k) {
  require_nonempty(points);
  require_uniform_dim(points);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t n = points.size();

  std::vector<std::size_t> centers{0};
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = distance(points[i], points[0]);
  while (centers.size() < static_cast<std::size_t>(k)) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (dist[i] > dist[far]) far = i;
    if (dist[far] == 0.0) break;  // every point coincides with a center
    centers.push_back(far);
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], distance(points[i], points[far]));
  }
  KCenterResult res;
  for (std::size_t c : centers) res.centers.push_back(points[c]);
  res.radius = *std::max_element(dist.begin(), dist.end());
  return res;
}

namespace {

// Branch-and-bound over set partitions in restricted-growth order.
struct ExactSearch {
  std::span<const Point> pts;
  std::vector<std::size_t> order;  // farthest-first order for strong pruning
  int k = 1;
  std::vector<std::vector<Point>> groups;
  std::vector<double> group_radius;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Ball> best_balls;

  double group_meb_radius(const std::vector<Point>& g) const {
    return min_enclosing_ball(g).ball.radius;
  }

  void dfs(std::size_t i, double cur_max) {
    if (cur_max >= best) return;
    if (i == order.size()) {
      best = cur_max;
      best_balls.clear();
      for (const auto& g : groups) best_balls.push_back(min_enclosing_ball(g).ball);
      return;
    }
    const Point& p = pts[order[i]];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      groups[g].push_back(p);
      const double old_r = group_radius[g];
      const double new_r = group_meb_radius(groups[g]);
      group_radius[g] = new_r;
      dfs(i + 1, std::max(cur_max, new_r));
      group_radius[g] = old_r;
      groups[g].pop_back();
    }
    if (groups.size() < static_cast<std::size_t>(k)) {
      groups.push_back({p});
      group_radius.push_back(0.0);
      dfs(i + 1, cur_max);
      groups.pop_back();
      group_radius.pop_back();
    }
  }
};

}  // namespace

KCenterResult exact_k_center(std::span<const Point> points, int k) {
  require_nonempty(points);
  require_uniform_dim(points);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (points.size() > kExactKCenterCap)
    throw std::invalid_argument("exact_k_center: input exceeds brute-force cap");

  if (static_cast<std::size_t>(k) >= points.size()) {
    KCenterResult res;
    for (const auto& p : points) res.centers.push_back(p);
    res.radius = 0.0;
    return res;
  }

  ExactSearch s;
  s.pts = points;
  s.k = k;
  // Visit points in farthest-first order so large radii appear early and
  // the bound prunes aggressively.
  {
    const std::size_t n = points.size();
    std::vector<bool> used(n, false);
    std::vector<double> dist(n);
    s.order.push_back(0);
    used[0] = true;
    for (std::size_t i = 0; i < n; ++i) dist[i] = distance(points[i], points[0]);
    while (s.order.size() < n) {
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (far == n || dist[i] > dist[far]) far = i;
      }
      s.order.push_back(far);
      used[far] = true;
      for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], distance(points[i], points[far]));
    }
  }
  s.dfs(0, 0.0);

  KCenterResult res;
  res.radius = s.best;
  for (const auto& b : s.best_balls) res.centers.push_back(b.center);
  return res;
}

double diameter(std::span<const Point> points) {
  require_nonempty(points);
  require_uniform_dim(points);
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, distance(points[i], points[j]));
  return best;
}

std::optional<double> closest_pair_nonzero(std::span<const Point> points) {
  if (points.size() < 2) throw std::invalid_argument("need at least 2 points");
  require_uniform_dim(points);
  std::optional<double> best;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance(points[i], points[j]);
      if (d > 0.0 && (!best || d < *best)) best = d;
    }
  return best;
}

std::optional<double> aspect_ratio(std::span<const Point> points) {
  auto cp = closest_pair_nonzero(points);
  if (!cp) return std::nullopt;
  return diameter(points) / *cp;
}

}  // namespace swkc
