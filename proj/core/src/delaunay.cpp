#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "topoflux/errors.hpp"
#include "topoflux/filtration.hpp"

namespace topoflux {

namespace {

// Fixed shuffle seed: cocircular ties resolve by insertion order, so the
// triangulation of a given cloud must not vary between calls.
constexpr std::uint64_t kInsertionShuffleSeed = 0x746f706f666c7578ULL;

struct Vec2 {
  long double x, y;
};

// > 0 if (a, b, c) is counterclockwise.
long double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// > 0 if p lies strictly inside the circumcircle of ccw triangle (a, b, c).
long double in_circle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const long double ax = a.x - p.x, ay = a.y - p.y;
  const long double bx = b.x - p.x, by = b.y - p.y;
  const long double cx = c.x - p.x, cy = c.y - p.y;
  const long double a2 = ax * ax + ay * ay;
  const long double b2 = bx * bx + by * by;
  const long double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

struct Tri {
  std::array<int, 3> v;  // ccw
};

bool all_collinear(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) return true;
  const Vec2& p0 = pts[0];
  const Vec2& p1 = pts[1];
  for (std::size_t i = 2; i < pts.size(); ++i)
    if (orient(p0, p1, pts[i]) != 0.0L) return false;
  return true;
}

SimplicialComplex path_complex(const std::vector<Vec2>& pts) {
  // Degenerate collinear input: connect consecutive points along the line.
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  const Vec2 dir{pts.back().x - pts.front().x, pts.back().y - pts.front().y};
  auto key = [&](int i) { return pts[i].x * dir.x + pts[i].y * dir.y; };
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (key(i) != key(j)) return key(i) < key(j);
    return i < j;
  });
  std::vector<Simplex> gens;
  for (std::size_t i = 0; i < pts.size(); ++i) gens.push_back(Simplex{static_cast<int>(i)});
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    gens.push_back(Simplex{order[i], order[i + 1]});
  return SimplicialComplex::closure(gens);
}

}  // namespace

void validate_cloud(const PointCloud& cloud, bool require_distinct) {
  if (cloud.rows() < 1 || cloud.cols() < 1)
    throw DegenerateInputError("point cloud must have at least one point and one coordinate");
  if (!cloud.allFinite()) throw DegenerateInputError("point cloud has non-finite coordinates");
  if (require_distinct) {
    std::vector<int> order(cloud.rows());
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](int i, int j) {
      for (Eigen::Index c = 0; c < cloud.cols(); ++c) {
        if (cloud(i, c) != cloud(j, c)) return cloud(i, c) < cloud(j, c);
      }
      return false;
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if (cloud.row(order[i]) == cloud.row(order[i + 1]))
        throw DegenerateInputError("exact duplicate points " + std::to_string(order[i]) + " and " +
                                   std::to_string(order[i + 1]) +
                                   "; jitter the input to restore general position");
  }
}

SimplicialComplex delaunay_2d(const PointCloud& cloud) {
  if (cloud.cols() != 2) throw ConfigError("delaunay_2d expects a 2-column point cloud");
  validate_cloud(cloud, /*require_distinct=*/true);
  const int n = static_cast<int>(cloud.rows());

  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = {cloud(i, 0), cloud(i, 1)};

  if (n == 1) return SimplicialComplex::closure({Simplex{0}});
  if (n == 2) return SimplicialComplex::closure({Simplex{0, 1}});
  if (all_collinear(pts)) return path_complex(pts);

  // Super-triangle comfortably containing the bounding box.
  long double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const Vec2& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const long double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
  const long double span = std::max({max_x - min_x, max_y - min_y, 1.0L}) * 4096.0L;
  pts.push_back({cx - 2 * span, cy - span});
  pts.push_back({cx + 2 * span, cy - span});
  pts.push_back({cx, cy + 2 * span});

  std::vector<Tri> tris;
  {
    Tri super{{n, n + 1, n + 2}};
    if (orient(pts[n], pts[n + 1], pts[n + 2]) < 0) std::swap(super.v[1], super.v[2]);
    tris.push_back(super);
  }

  std::vector<int> insertion(n);
  std::iota(insertion.begin(), insertion.end(), 0);
  std::mt19937_64 rng(kInsertionShuffleSeed);
  std::shuffle(insertion.begin(), insertion.end(), rng);

  std::vector<char> bad;
  for (int pi : insertion) {
    const Vec2& p = pts[pi];
    bad.assign(tris.size(), 0);
    // Directed boundary edges of the cavity appear in exactly one bad triangle.
    std::map<std::pair<int, int>, std::pair<int, int>> edges;  // sorted -> directed
    std::map<std::pair<int, int>, int> edge_count;
    bool any_bad = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const Tri& tr = tris[t];
      if (in_circle(pts[tr.v[0]], pts[tr.v[1]], pts[tr.v[2]], p) > 0) {
        bad[t] = 1;
        any_bad = true;
        for (int e = 0; e < 3; ++e) {
          int u = tr.v[e], v = tr.v[(e + 1) % 3];
          auto key = std::minmax(u, v);
          edges[key] = {u, v};
          edge_count[key] += 1;
        }
      }
    }
    if (!any_bad)
      throw DegenerateInputError("triangulation cavity empty; input too degenerate");

    std::vector<Tri> next;
    next.reserve(tris.size() + 2);
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (!bad[t]) next.push_back(tris[t]);
    for (const auto& [key, directed] : edges) {
      if (edge_count[key] != 1) continue;
      // p lies left of every ccw cavity boundary edge, so (u, v, p) is ccw.
      Tri fresh{{directed.first, directed.second, pi}};
      if (orient(pts[fresh.v[0]], pts[fresh.v[1]], pts[fresh.v[2]]) <= 0) continue;
      next.push_back(fresh);
    }
    tris = std::move(next);
  }

  std::vector<Simplex> gens;
  gens.reserve(tris.size() + n);
  for (int i = 0; i < n; ++i) gens.push_back(Simplex{i});
  for (const Tri& t : tris) {
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    gens.push_back(Simplex{t.v[0], t.v[1], t.v[2]});
  }
  return SimplicialComplex::closure(gens);
}

}  // namespace topoflux
