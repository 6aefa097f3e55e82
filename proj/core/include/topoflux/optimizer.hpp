#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>

#include "topoflux/embedders.hpp"
#include "topoflux/topo_loss.hpp"

namespace topoflux {

enum class RunMode { regularized, topological_only, embedding_only };

struct RunConfig {
  double lambda_top = 0.0;
  double learning_rate = 1e-2;
  int max_epochs = 500;
  int stop_window_long = 100;
  int stop_window_short = 50;
  double stop_tolerance = 1e-3;
  bool stagnation_enabled = true;
  // Optional heavy-ball momentum on the update; nesterov additionally
  // evaluates gradients at the lookahead point (free-coordinate models only;
  // the linear embedder always uses the classical form).
  double momentum = 0.0;
  bool nesterov = false;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::regularized;

  void validate() const;
};

struct EpochRecord {
  double embedding_loss = 0.0;
  double topological_loss = 0.0;
  double total_loss = 0.0;  // embedding_loss + lambda_top * topological_loss
};

struct RunTrace {
  std::vector<EpochRecord> epochs;
  Eigen::MatrixXd final_embedding;
  Eigen::MatrixXd final_projection;  // empty unless the embedder is linear
  double final_embedding_loss = 0.0;
  // Final topological loss on the full data with sampling stripped, so runs
  // with different sampling settings stay comparable.
  double final_topological_loss = 0.0;
  double wall_seconds = 0.0;
  bool diverged = false;
  bool stopped_by_stagnation = false;
};

/// Linear projection embedder: E = X W with W optimized on the Stiefel
/// manifold against the reconstruction error.  X is centered on construction.
struct PcaEmbedder {
  Eigen::MatrixXd X;   // column-centered
  Eigen::MatrixXd W0;  // orthonormal initialization

  static PcaEmbedder from_data(const Eigen::MatrixXd& data, int d);
};

/// Free-coordinate neighbor embedder.
struct UmapEmbedder {
  KnnGraph graph;
  int negatives = 5;
  Eigen::MatrixXd E0;

  static UmapEmbedder from_data(const Eigen::MatrixXd& data, int d, int k, std::uint64_t seed);
};

/// Free-coordinate Bernoulli edge-probability embedder.
struct InnerProductEmbedder {
  GraphData graph;
  Eigen::MatrixXd E0;

  static InnerProductEmbedder from_graph(const GraphData& graph, int d, std::uint64_t seed);
};

/// Free-coordinate random-walk skip-gram embedder.
struct DeepWalkEmbedder {
  GraphData graph;
  WalkConfig walks;
  Eigen::MatrixXd E0;

  static DeepWalkEmbedder from_graph(const GraphData& graph, int d, std::uint64_t seed);
};

/// Bare coordinates with no embedding loss; the carrier for pure topological
/// optimization of a point cloud.
struct FreeEmbedder {
  Eigen::MatrixXd E0;
};

using EmbedderModel =
    std::variant<PcaEmbedder, UmapEmbedder, InnerProductEmbedder, DeepWalkEmbedder, FreeEmbedder>;

/// True once the topological loss has stagnated: with at least
/// stop_window_long epochs recorded, |mean(long)/mean(short) - 1| falls below
/// the tolerance (absolute difference when the short mean is zero).
bool stagnation_stop(const RunTrace& trace, const RunConfig& config);

/// Joint descent on total = embedding + lambda_top * topological loss.  The
/// mode selects which gradients drive the update; both losses are recorded
/// every epoch regardless (embedding-only skips the topological evaluation
/// and records zero).  Deterministic given config.seed.
RunTrace fit(const EmbedderModel& model, const TopoLossSpec& spec, const RunConfig& config);

/// Embedding-loss-only variant of fit for models without a topological prior.
RunTrace fit_embedding_only(const EmbedderModel& model, const RunConfig& config);

}  // namespace topoflux
