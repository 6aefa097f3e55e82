#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "topoflux/topo_loss.hpp"

namespace topoflux {

/// Undirected graph on densely indexed nodes.
struct GraphData {
  int node_count = 0;
  std::vector<std::array<int, 2>> edges;  // u < v, no self-loops, no duplicates
  std::vector<int> labels;                // optional, empty or node_count entries

  void validate() const;
  bool has_edge(int u, int v) const;
};

/// Mean squared reconstruction error of the rank-d projection X W W^T and its
/// Euclidean gradient with respect to W.  X must be column-centered.
std::pair<double, Eigen::MatrixXd> pca_loss_grad(const Eigen::MatrixXd& X,
                                                 const Eigen::MatrixXd& W);

/// One fixed-size descent step on the Stiefel manifold: project the gradient
/// onto the tangent space at W, step, and retract by QR with the R diagonal
/// sign-fixed.  The result has orthonormal columns.
Eigen::MatrixXd stiefel_step(const Eigen::MatrixXd& W, const Eigen::MatrixXd& euclidean_grad,
                             double step_size);

/// Column-centered copy of a data matrix.
Eigen::MatrixXd center_columns(const Eigen::MatrixXd& X);

/// Top-d right singular vectors of a centered X (the classical projection).
Eigen::MatrixXd pca_projection(const Eigen::MatrixXd& X, int d);

/// k-nearest-neighbor graph with smooth local kernel weights, symmetrized by
/// probabilistic union.  Built once from the input data.
struct KnnGraph {
  struct Edge {
    int u, v;
    double weight;
  };
  int node_count = 0;
  std::vector<Edge> edges;
};
KnnGraph build_knn_graph(const Eigen::MatrixXd& X, int k);

/// Neighbor-embedding loss on E: Cauchy-kernel attraction over the weighted
/// kNN edges plus uniform negative-sample repulsion (negatives frozen under
/// the seed for the duration of the call).
LossGrad umap_like_loss_grad(const KnnGraph& graph, const Eigen::MatrixXd& E, int negatives,
                             std::uint64_t seed);

/// Bernoulli edge model: mean binary cross-entropy between sigmoid(<e_u,e_v>)
/// and the edge indicator over all unordered node pairs.
LossGrad inner_product_graph_loss_grad(const GraphData& graph, const Eigen::MatrixXd& E);

struct WalkConfig {
  int walks_per_node = 10;
  int walk_length = 10;
  int window = 2;
  int negatives = 5;
};

/// Skip-gram with negative sampling over random walks regenerated under the
/// seed; negatives drawn from the walk-occurrence distribution raised to 3/4.
LossGrad deepwalk_loss_grad(const GraphData& graph, const Eigen::MatrixXd& E,
                            const WalkConfig& config, std::uint64_t seed);

}  // namespace topoflux
