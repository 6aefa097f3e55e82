#pragma once

#include <Eigen/Dense>
#include <vector>

#include "topoflux/filtration.hpp"

namespace topoflux {

/// Closed polygonal model of the dominant cycle of a 2D embedding.  The loop
/// starts at its smallest vertex index and is oriented toward that vertex's
/// smaller-index neighbor; edge k joins loop[k] to loop[(k+1) % size].
struct CycleModel {
  std::vector<int> loop;                   // vertex indices into the embedding
  std::vector<double> cumulative_length;   // arc length at the start of edge k
  double total_length = 0.0;

  int edge_count() const { return static_cast<int>(loop.size()); }
};

/// Extracts the most persistent 1-cycle of the weak Alpha filtration of E and
/// orders it into a closed polygon.  Throws NotFoundError when the diagram
/// has no 1-dimensional regular point.
CycleModel extract_cycle_model(const PointCloud& embedding);

/// Closest point of a cycle: per-segment clamped orthogonal projection, ties
/// resolved toward the lowest edge index.
struct CycleProjection {
  int edge = 0;
  double t = 0.0;  // position within the edge, in [0, 1]
  Eigen::Vector2d point = Eigen::Vector2d::Zero();
  double distance = 0.0;
};
std::vector<CycleProjection> project_onto_cycle(const PointCloud& embedding,
                                                const CycleModel& model);

/// Angular pseudotimes in [0, 2*pi): arc-length position of each projection
/// scaled by the total cycle length.
std::vector<double> circular_pseudotimes(const std::vector<CycleProjection>& projections,
                                         const CycleModel& model);

}  // namespace topoflux
