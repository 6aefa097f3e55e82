#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "topoflux/persistence.hpp"
#include "topoflux/pseudotime.hpp"

namespace topoflux {

/// Scatter plot of a 2D point set (first two columns of wider inputs).
/// Optional per-point values map onto a continuous color scale; an optional
/// cycle model is drawn as a closed polyline.
void write_scatter_svg(const std::string& path, const Eigen::MatrixXd& points,
                       const std::vector<double>& values = {},
                       const CycleModel* cycle = nullptr, const std::string& title = "");

/// Persistence diagram plot: birth/death axes, the diagonal, one marker color
/// per homology dimension, essential points pinned to the top edge.
void write_diagram_svg(const std::string& path, const std::vector<PersistenceDiagram>& dgms,
                       const std::string& title = "");

}  // namespace topoflux
