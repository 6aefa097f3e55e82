#include "topoflux/optimizer.hpp"

#include <chrono>
#include <cmath>

#include "topoflux/errors.hpp"
#include "topoflux/rng.hpp"

namespace topoflux {

void RunConfig::validate() const {
  if (lambda_top < 0.0) throw ConfigError("lambda_top must be >= 0");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (stop_window_short < 1 || stop_window_long <= stop_window_short)
    throw ConfigError("stop windows must satisfy 1 <= short < long");
  if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("momentum must lie in [0, 1)");
}

PcaEmbedder PcaEmbedder::from_data(const Eigen::MatrixXd& data, int d) {
  PcaEmbedder e;
  e.X = center_columns(data);
  e.W0 = pca_projection(e.X, d);
  return e;
}

UmapEmbedder UmapEmbedder::from_data(const Eigen::MatrixXd& data, int d, int k,
                                     std::uint64_t seed) {
  UmapEmbedder e;
  e.graph = build_knn_graph(data, k);
  // Principal-component scores scaled to a small box, plus jitter to keep
  // points distinct for the topological losses.
  const Eigen::MatrixXd centered = center_columns(data);
  e.E0 = centered * pca_projection(centered, d);
  const double extent = e.E0.cwiseAbs().maxCoeff();
  if (extent > 0.0) e.E0 *= 5.0 / extent;
  std::mt19937_64 rng = make_rng(derive_seed(seed, "umap-init"));
  std::normal_distribution<double> jitter(0.0, 1e-4);
  for (Eigen::Index i = 0; i < e.E0.rows(); ++i)
    for (int c = 0; c < d; ++c) e.E0(i, c) += jitter(rng);
  return e;
}

namespace {

Eigen::MatrixXd gaussian_init(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd E(n, d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) E(i, c) = gauss(rng);
  return E;
}

}  // namespace

InnerProductEmbedder InnerProductEmbedder::from_graph(const GraphData& graph, int d,
                                                      std::uint64_t seed) {
  graph.validate();
  return {graph, gaussian_init(graph.node_count, d, derive_seed(seed, "ip-init"))};
}

DeepWalkEmbedder DeepWalkEmbedder::from_graph(const GraphData& graph, int d, std::uint64_t seed) {
  graph.validate();
  return {graph, WalkConfig{}, gaussian_init(graph.node_count, d, derive_seed(seed, "dw-init"))};
}

bool stagnation_stop(const RunTrace& trace, const RunConfig& config) {
  const int n = static_cast<int>(trace.epochs.size());
  if (n < config.stop_window_long) return false;
  auto mean_tail = [&](int window) {
    double s = 0.0;
    for (int i = n - window; i < n; ++i) s += trace.epochs[i].topological_loss;
    return s / window;
  };
  const double long_mean = mean_tail(config.stop_window_long);
  const double short_mean = mean_tail(config.stop_window_short);
  if (short_mean == 0.0) return std::abs(long_mean - short_mean) < config.stop_tolerance;
  return std::abs(long_mean / short_mean - 1.0) < config.stop_tolerance;
}

namespace {

struct EmbeddingEval {
  double value;
  Eigen::MatrixXd grad;  // with respect to the free parameter (W or E)
};

// Strips sampling so final topological losses are comparable across runs.
TopoLossSpec without_sampling(const TopoLossSpec& spec) {
  TopoLossSpec full = spec;
  for (LossTerm& t : full.terms) t.sampling.reset();
  return full;
}

}  // namespace

RunTrace fit(const EmbedderModel& model, const TopoLossSpec& spec, const RunConfig& config) {
  config.validate();
  if (config.mode != RunMode::embedding_only) spec.validate();
  const auto started = std::chrono::steady_clock::now();

  const PcaEmbedder* pca = std::get_if<PcaEmbedder>(&model);
  const bool linear = pca != nullptr;

  Eigen::MatrixXd W;  // linear parameter
  Eigen::MatrixXd E;  // current embedding
  if (linear) {
    W = pca->W0;
    E = pca->X * W;
  } else if (const auto* m = std::get_if<UmapEmbedder>(&model)) {
    E = m->E0;
  } else if (const auto* m = std::get_if<InnerProductEmbedder>(&model)) {
    E = m->E0;
  } else if (const auto* m = std::get_if<DeepWalkEmbedder>(&model)) {
    E = m->E0;
  } else {
    E = std::get<FreeEmbedder>(model).E0;
  }

  auto embedding_eval = [&](const Eigen::MatrixXd& current, std::uint64_t epoch_seed) {
    if (pca) {
      auto [value, grad] = pca_loss_grad(pca->X, W);
      return EmbeddingEval{value, std::move(grad)};
    }
    if (const auto* m = std::get_if<UmapEmbedder>(&model)) {
      LossGrad lg = umap_like_loss_grad(m->graph, current, m->negatives,
                                        derive_seed(epoch_seed, "umap-negatives"));
      return EmbeddingEval{lg.value, std::move(lg.gradient)};
    }
    if (const auto* m = std::get_if<InnerProductEmbedder>(&model)) {
      LossGrad lg = inner_product_graph_loss_grad(m->graph, current);
      return EmbeddingEval{lg.value, std::move(lg.gradient)};
    }
    if (const auto* m = std::get_if<DeepWalkEmbedder>(&model)) {
      LossGrad lg =
          deepwalk_loss_grad(m->graph, current, m->walks, derive_seed(epoch_seed, "walks"));
      return EmbeddingEval{lg.value, std::move(lg.gradient)};
    }
    return EmbeddingEval{0.0, Eigen::MatrixXd::Zero(current.rows(), current.cols())};
  };

  RunTrace trace;
  const bool consult_stop =
      config.stagnation_enabled && (config.mode == RunMode::topological_only ||
                                    (config.mode == RunMode::regularized && config.lambda_top > 0));
  const bool lookahead = config.nesterov && !linear && config.momentum > 0.0;
  Eigen::MatrixXd velocity;  // lazily sized to the update shape

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const std::uint64_t epoch_seed = derive_seed(config.seed, static_cast<std::uint64_t>(epoch));

    // With nesterov momentum, gradients (and the recorded losses) come from
    // the lookahead point.
    Eigen::MatrixXd at = E;
    if (lookahead && velocity.size() > 0)
      at -= config.learning_rate * config.momentum * velocity;

    EmbeddingEval emb = embedding_eval(at, epoch_seed);
    LossGrad topo;
    topo.gradient = Gradient::Zero(E.rows(), E.cols());
    if (config.mode != RunMode::embedding_only)
      topo = eval_spec(at, spec, derive_seed(epoch_seed, "topo"));

    EpochRecord rec{emb.value, topo.value, emb.value + config.lambda_top * topo.value};
    trace.epochs.push_back(rec);
    if (!std::isfinite(rec.total_loss)) {
      trace.diverged = true;
      break;
    }

    // Combine gradients per mode; for the linear embedder the topological
    // gradient on E chains to W through E = X W.
    Eigen::MatrixXd update;
    if (linear) {
      Eigen::MatrixXd topo_on_w = pca->X.transpose() * topo.gradient;
      switch (config.mode) {
        case RunMode::regularized:
          update = emb.grad + config.lambda_top * topo_on_w;
          break;
        case RunMode::topological_only:
          update = std::move(topo_on_w);
          break;
        case RunMode::embedding_only:
          update = emb.grad;
          break;
      }
    } else {
      switch (config.mode) {
        case RunMode::regularized:
          update = emb.grad + config.lambda_top * topo.gradient;
          break;
        case RunMode::topological_only:
          update = topo.gradient;
          break;
        case RunMode::embedding_only:
          update = emb.grad;
          break;
      }
    }
    if (config.momentum > 0.0) {
      if (velocity.size() == 0) velocity = Eigen::MatrixXd::Zero(update.rows(), update.cols());
      velocity = config.momentum * velocity + update;
      update = velocity;
    }

    if (linear) {
      W = stiefel_step(W, update, config.learning_rate);
      E = pca->X * W;
    } else {
      E -= config.learning_rate * update;
    }

    if (consult_stop && stagnation_stop(trace, config)) {
      trace.stopped_by_stagnation = true;
      break;
    }
  }

  trace.final_embedding = E;
  if (linear) trace.final_projection = W;
  trace.final_embedding_loss = embedding_eval(E, derive_seed(config.seed, "final")).value;
  if (config.mode != RunMode::embedding_only && !trace.diverged) {
    TopoLossSpec full = without_sampling(spec);
    trace.final_topological_loss =
        eval_spec(E, full, derive_seed(config.seed, "final-topo")).value;
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

RunTrace fit_embedding_only(const EmbedderModel& model, const RunConfig& config) {
  RunConfig cfg = config;
  cfg.mode = RunMode::embedding_only;
  TopoLossSpec unused;
  return fit(model, unused, cfg);
}

}  // namespace topoflux
