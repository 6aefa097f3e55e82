#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "topoflux/datasets.hpp"
#include "topoflux/optimizer.hpp"
#include "topoflux/rng.hpp"

using namespace topoflux;

namespace {

TopoLossSpec circle_spec(double sampling_fraction = 0.0, int repeats = 1) {
  TopoLossSpec spec;
  LossTerm t;
  t.hom_dim = 1;
  t.rank_lo = t.rank_hi = 1;
  t.sign = -1;
  if (sampling_fraction > 0.0) t.sampling = SamplingParams{sampling_fraction, repeats};
  spec.terms.push_back(t);
  return spec;
}

RunTrace constant_trace(int epochs, double topo) {
  RunTrace trace;
  for (int e = 0; e < epochs; ++e) trace.epochs.push_back({0.0, topo, topo});
  return trace;
}

}  // namespace

TEST_SUITE_BEGIN("optimizer");

TEST_CASE("stagnation rule") {
  RunConfig config;
  SUBCASE("needs a full long window") {
    CHECK(!stagnation_stop(constant_trace(99, 1.0), config));
  }
  SUBCASE("fires on a constant trace") {
    CHECK(stagnation_stop(constant_trace(100, 1.0), config));
    CHECK(stagnation_stop(constant_trace(100, 0.0), config));  // zero-mean guard
  }
  SUBCASE("stays quiet on a steep linear descent") {
    RunTrace trace;
    for (int e = 0; e < 200; ++e) {
      const double v = 100.0 - e;
      trace.epochs.push_back({0.0, v, v});
    }
    CHECK(!stagnation_stop(trace, config));
  }
}

TEST_CASE("lambda zero reproduces the embedding-only trajectory") {
  auto data = generate_synthetic_cycle(30, 12, 0.3, 3).points;
  EmbedderModel model = PcaEmbedder::from_data(data, 2);

  RunConfig reg;
  reg.mode = RunMode::regularized;
  reg.lambda_top = 0.0;
  reg.max_epochs = 40;
  reg.seed = 9;

  RunConfig emb_only = reg;
  emb_only.mode = RunMode::embedding_only;

  RunTrace a = fit(model, circle_spec(), reg);
  RunTrace b = fit(model, circle_spec(), emb_only);
  REQUIRE(a.epochs.size() == b.epochs.size());
  CHECK((a.final_embedding - b.final_embedding).norm() == 0.0);
  for (std::size_t e = 0; e < a.epochs.size(); ++e)
    CHECK(a.epochs[e].embedding_loss == b.epochs[e].embedding_loss);
}

TEST_CASE("loss accounting identity holds at every epoch") {
  auto data = generate_synthetic_cycle(25, 8, 0.3, 5).points;
  EmbedderModel model = PcaEmbedder::from_data(data, 2);
  RunConfig config;
  config.mode = RunMode::regularized;
  config.lambda_top = 0.37;
  config.max_epochs = 30;
  RunTrace trace = fit(model, circle_spec(), config);
  for (const auto& rec : trace.epochs)
    CHECK(rec.total_loss == rec.embedding_loss + config.lambda_top * rec.topological_loss);
}

TEST_CASE("identical config and seed reproduce the trace bitwise") {
  auto data = generate_synthetic_cycle(24, 10, 0.35, 7).points;
  EmbedderModel model = PcaEmbedder::from_data(data, 2);
  RunConfig config;
  config.mode = RunMode::regularized;
  config.lambda_top = 0.05;
  config.max_epochs = 25;
  config.seed = 1234;
  TopoLossSpec spec = circle_spec(0.5, 3);

  RunTrace a = fit(model, spec, config);
  RunTrace b = fit(model, spec, config);
  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t e = 0; e < a.epochs.size(); ++e) {
    CHECK(a.epochs[e].embedding_loss == b.epochs[e].embedding_loss);
    CHECK(a.epochs[e].topological_loss == b.epochs[e].topological_loss);
  }
  CHECK((a.final_embedding - b.final_embedding).norm() == 0.0);
}

TEST_CASE("regularization strength orders the final losses") {
  auto data = generate_synthetic_cycle(30, 12, 0.35, 11).points;
  EmbedderModel model = PcaEmbedder::from_data(data, 2);
  TopoLossSpec spec = circle_spec();

  std::vector<double> emb_losses, topo_losses;
  for (double lambda : {0.0, 0.002, 0.2}) {
    RunConfig config;
    config.mode = RunMode::regularized;
    config.lambda_top = lambda;
    config.max_epochs = 120;
    config.stagnation_enabled = false;
    config.seed = 21;
    RunTrace trace = fit(model, spec, config);
    emb_losses.push_back(trace.final_embedding_loss);
    topo_losses.push_back(trace.final_topological_loss);
  }
  CHECK(emb_losses[0] <= emb_losses[1] + 1e-12);
  CHECK(emb_losses[1] <= emb_losses[2] + 1e-12);
  CHECK(topo_losses[0] >= topo_losses[1] - 1e-12);
  CHECK(topo_losses[1] >= topo_losses[2] - 1e-12);
}

TEST_CASE("pure topological descent grows the sampled cycle") {
  // A free-coordinate run on a Gaussian cloud, evaluating the cycle term on
  // one random fifth of the points per epoch.
  auto cloud = generate_gaussian_cloud(200, 2, 13);
  TopoLossSpec spec = circle_spec(0.2, 1);
  TopoLossSpec full = circle_spec();

  const double initial = eval_spec(cloud, full, 0).value;
  Eigen::MatrixXd E = cloud;
  for (int epoch = 0; epoch < 500; ++epoch) {
    LossGrad topo = eval_spec(E, spec, derive_seed(99, epoch));
    E -= 0.1 * topo.gradient;
  }
  const double final_loss = eval_spec(E, full, 0).value;
  // Both are negative persistences; the dominant cycle at least doubles.
  CHECK(final_loss <= 0.5 * initial);
  CHECK(final_loss <= 2.0 * initial);
}

TEST_CASE("momentum accelerates and stays reproducible") {
  auto cloud = generate_gaussian_cloud(20, 2, 5);
  TopoLossSpec spec;
  LossTerm t;
  t.hom_dim = 0;
  t.rank_lo = t.rank_hi = 2;
  t.sign = 1;
  spec.terms.push_back(t);

  RunConfig plain;
  plain.mode = RunMode::topological_only;
  plain.learning_rate = 0.01;
  plain.max_epochs = 150;
  plain.stagnation_enabled = false;

  RunConfig heavy = plain;
  heavy.momentum = 0.9;

  RunTrace a = fit(FreeEmbedder{cloud}, spec, plain);
  RunTrace b = fit(FreeEmbedder{cloud}, spec, heavy);
  RunTrace b2 = fit(FreeEmbedder{cloud}, spec, heavy);
  CHECK((b.final_embedding - b2.final_embedding).norm() == 0.0);
  CHECK(b.final_topological_loss < a.final_topological_loss);
  CHECK((a.final_embedding - b.final_embedding).norm() > 0.0);

  RunConfig nesterov = heavy;
  nesterov.nesterov = true;
  RunTrace c = fit(FreeEmbedder{cloud}, spec, nesterov);
  CHECK(c.final_topological_loss < a.final_topological_loss);
}

TEST_CASE("diverging losses abort with the trace so far") {
  GraphData path;
  path.node_count = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  EmbedderModel model = InnerProductEmbedder::from_graph(path, 2, 17);
  RunConfig config;
  config.mode = RunMode::embedding_only;
  config.learning_rate = 1e9;  // blows the coordinates up within a few steps
  config.max_epochs = 200;
  RunTrace trace = fit_embedding_only(model, config);
  CHECK(trace.diverged);
  CHECK(trace.epochs.size() < 200);
}

TEST_SUITE_END();
