#include "topoflux/pseudotime.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "topoflux/errors.hpp"
#include "topoflux/persistence.hpp"

namespace topoflux {

CycleModel extract_cycle_model(const PointCloud& embedding) {
  if (embedding.cols() != 2) throw ConfigError("cycle extraction expects a 2D embedding");
  Filtration filt = weak_alpha_filtration(embedding);
  PersistencePairing pairing = reduce(filt);
  std::vector<std::array<int, 2>> edges;
  try {
    edges = representative_cycle(filt, pairing, 1);
  } catch (const NotFoundError&) {
    throw NotFoundError("embedding has no 1-dimensional hole to model a cycle from");
  }
  if (edges.size() < 3) throw NotFoundError("dominant cycle degenerated below three edges");

  // Order the simple loop: start at the smallest vertex, head toward its
  // smaller neighbor.
  std::map<int, std::vector<int>> adj;
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

  CycleModel model;
  const int start = adj.begin()->first;
  int prev = -1, at = start;
  do {
    model.loop.push_back(at);
    const auto& nbrs = adj[at];
    int next = (nbrs[0] != prev) ? nbrs[0] : nbrs[1];
    prev = at;
    at = next;
  } while (at != start);

  model.cumulative_length.resize(model.loop.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < model.loop.size(); ++k) {
    model.cumulative_length[k] = acc;
    const int a = model.loop[k];
    const int b = model.loop[(k + 1) % model.loop.size()];
    const double len = (embedding.row(a) - embedding.row(b)).norm();
    if (len <= 0.0) throw NotFoundError("cycle contains a degenerate edge");
    acc += len;
  }
  model.total_length = acc;
  return model;
}

std::vector<CycleProjection> project_onto_cycle(const PointCloud& embedding,
                                                const CycleModel& model) {
  if (embedding.cols() != 2) throw ConfigError("cycle projection expects a 2D embedding");
  std::vector<CycleProjection> out(embedding.rows());
  for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
    const Eigen::Vector2d x = embedding.row(i).transpose();
    CycleProjection best;
    best.distance = std::numeric_limits<double>::infinity();
    for (int k = 0; k < model.edge_count(); ++k) {
      const Eigen::Vector2d a = embedding.row(model.loop[k]).transpose();
      const Eigen::Vector2d b =
          embedding.row(model.loop[(k + 1) % model.loop.size()]).transpose();
      const Eigen::Vector2d ab = b - a;
      const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      const Eigen::Vector2d proj = a + t * ab;
      const double d = (x - proj).norm();
      if (d < best.distance) {  // strict: ties keep the lowest edge index
        best = {k, t, proj, d};
      }
    }
    out[i] = best;
  }
  return out;
}

std::vector<double> circular_pseudotimes(const std::vector<CycleProjection>& projections,
                                         const CycleModel& model) {
  std::vector<double> out(projections.size());
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const CycleProjection& p = projections[i];
    const int k = p.edge;
    const double edge_len =
        (k + 1 < model.edge_count() ? model.cumulative_length[k + 1] : model.total_length) -
        model.cumulative_length[k];
    double arc = model.cumulative_length[k] + p.t * edge_len;
    double time = 2.0 * std::numbers::pi * arc / model.total_length;
    if (time >= 2.0 * std::numbers::pi) time -= 2.0 * std::numbers::pi;
    out[i] = time;
  }
  return out;
}

}  // namespace topoflux
