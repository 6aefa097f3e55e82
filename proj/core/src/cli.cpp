#include "topoflux/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "topoflux/datasets.hpp"
#include "topoflux/errors.hpp"
#include "topoflux/optimizer.hpp"
#include "topoflux/pseudotime.hpp"
#include "topoflux/rng.hpp"
#include "topoflux/serialize.hpp"
#include "topoflux/svg.hpp"

namespace topoflux {

namespace {

namespace fs = std::filesystem;

FiltrationChoice filtration_from_flag(const std::string& flag, int rips_max_dim) {
  if (flag == "weak-alpha") return FiltrationChoice::weak_alpha();
  if (flag == "rips") return FiltrationChoice::rips(rips_max_dim);
  throw ConfigError("unknown filtration \"" + flag + "\" (use weak-alpha or rips)");
}

void ensure_out_dir(const std::string& dir) {
  if (!dir.empty() && dir != ".") fs::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

int cmd_persist(const std::string& input, const std::string& filtration_flag, int rips_max_dim,
                const std::string& out_dir) {
  Eigen::MatrixXd cloud = load_point_csv(input);
  FiltrationChoice choice = filtration_from_flag(filtration_flag, rips_max_dim);
  Filtration filt = choice.build(cloud);
  PersistencePairing pairing = reduce(filt);
  const int max_dim = choice.kind == FiltrationChoice::Kind::rips ? choice.rips_max_dim : 1;
  auto dgms = diagrams(filt, pairing, max_dim);

  ensure_out_dir(out_dir);
  std::ofstream json_out(join(out_dir, "diagrams.json"));
  json_out << diagrams_to_json(dgms, filt) << '\n';
  write_diagram_svg(join(out_dir, "diagrams.svg"), dgms, "persistence diagrams");
  std::cout << "wrote " << join(out_dir, "diagrams.json") << " and "
            << join(out_dir, "diagrams.svg") << '\n';
  return 0;
}

int cmd_optimize(const std::string& input, const std::string& spec_path, double lr, int epochs,
                 std::uint64_t seed, const std::string& out_dir) {
  Eigen::MatrixXd cloud = load_point_csv(input);
  TopoLossSpec spec = load_loss_spec(spec_path);

  ensure_out_dir(out_dir);
  write_scatter_svg(join(out_dir, "before.svg"), cloud, {}, nullptr, "before optimization");

  // Pure topological descent on free coordinates.
  RunConfig config;
  config.mode = RunMode::topological_only;
  config.learning_rate = lr;
  config.max_epochs = epochs;
  config.seed = seed;
  RunTrace trace = fit(FreeEmbedder{cloud}, spec, config);

  write_trace_csv(join(out_dir, "trace.csv"), trace);
  write_point_csv(join(out_dir, "embedding.csv"), trace.final_embedding);
  write_scatter_svg(join(out_dir, "after.svg"), trace.final_embedding, {}, nullptr,
                    "after optimization");
  std::cout << "optimized " << trace.epochs.size() << " epochs; final loss "
            << trace.epochs.back().topological_loss << '\n';
  return trace.diverged ? 1 : 0;
}

int cmd_embed(const std::string& config_path, const std::string& out_override,
              double lambda_override, double lr_override, int epochs_override,
              long long seed_override) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (lambda_override >= 0.0) cfg.run.lambda_top = lambda_override;
  if (lr_override > 0.0) cfg.run.learning_rate = lr_override;
  if (epochs_override > 0) cfg.run.max_epochs = epochs_override;
  if (seed_override >= 0) cfg.run.seed = static_cast<std::uint64_t>(seed_override);

  EmbedderModel model = [&]() -> EmbedderModel {
    if (!cfg.edge_list.empty()) {
      GraphData graph = load_edge_list(cfg.edge_list);
      if (cfg.embedder == "deepwalk")
        return DeepWalkEmbedder::from_graph(graph, cfg.embed_dim, cfg.run.seed);
      if (cfg.embedder == "inner-product")
        return InnerProductEmbedder::from_graph(graph, cfg.embed_dim, cfg.run.seed);
      throw ConfigError("embedder \"" + cfg.embedder + "\" does not accept an edge list");
    }
    Eigen::MatrixXd data;
    if (!cfg.point_csv.empty()) {
      data = load_point_csv(cfg.point_csv, /*center=*/true);
    } else if (cfg.generator) {
      if (cfg.generator->kind == "synthetic-cycle")
        data = generate_synthetic_cycle(cfg.generator->n, cfg.generator->d, cfg.generator->noise,
                                        cfg.run.seed)
                   .points;
      else if (cfg.generator->kind == "gaussian")
        data = generate_gaussian_cloud(cfg.generator->n, cfg.generator->d, cfg.run.seed);
      else
        throw ConfigError("unknown generator \"" + cfg.generator->kind + "\"");
    }
    if (cfg.embedder == "pca") return PcaEmbedder::from_data(data, cfg.embed_dim);
    if (cfg.embedder == "umap")
      return UmapEmbedder::from_data(data, cfg.embed_dim, cfg.umap_neighbors, cfg.run.seed);
    throw ConfigError("embedder \"" + cfg.embedder + "\" needs a graph input");
  }();

  RunTrace trace = fit(model, cfg.loss, cfg.run);
  ensure_out_dir(cfg.out_dir);
  write_point_csv(join(cfg.out_dir, "embedding.csv"), trace.final_embedding);
  write_trace_csv(join(cfg.out_dir, "trace.csv"), trace);
  write_scatter_svg(join(cfg.out_dir, "embedding.svg"), trace.final_embedding, {}, nullptr,
                    "embedding");
  std::ofstream summary(join(cfg.out_dir, "summary.json"));
  summary << trace_summary_json(trace) << '\n';
  std::cout << "embedded in " << trace.epochs.size() << " epochs; l_emb "
            << trace.final_embedding_loss << ", l_top " << trace.final_topological_loss << '\n';
  return trace.diverged ? 1 : 0;
}

int cmd_pseudotime(const std::string& input, const std::string& out_dir) {
  Eigen::MatrixXd embedding = load_point_csv(input);
  CycleModel model = extract_cycle_model(embedding);
  auto projections = project_onto_cycle(embedding, model);
  auto times = circular_pseudotimes(projections, model);

  ensure_out_dir(out_dir);
  std::ofstream csv(join(out_dir, "pseudotimes.csv"));
  csv.precision(17);
  csv << "point,pseudotime,edge,t\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    csv << i << ',' << times[i] << ',' << projections[i].edge << ',' << projections[i].t << '\n';
  write_scatter_svg(join(out_dir, "pseudotime.svg"), embedding, times, &model,
                    "circular pseudotimes");
  std::cout << "wrote pseudotimes for " << times.size() << " points (cycle of "
            << model.loop.size() << " vertices)\n";
  return 0;
}

int cmd_bench(const std::string& sizes_flag, int iterations, std::uint64_t seed,
              const std::string& out_dir) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_flag);
  std::string tok;
  while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
  if (sizes.empty()) throw ConfigError("bench needs --sizes n1,n2,...");

  // Runtime of pure topological optimization of the dominant cycle,
  // full-cloud evaluation (no sampling).
  TopoLossSpec spec;
  spec.filtration = FiltrationChoice::weak_alpha();
  spec.terms.push_back({1, 1, 1, -1, 1.0, 0.0, 1.0, std::nullopt, std::nullopt});

  ensure_out_dir(out_dir);
  std::ofstream csv(join(out_dir, "bench.csv"));
  csv << "n,seconds\n";
  for (int n : sizes) {
    Eigen::MatrixXd E = generate_gaussian_cloud(n, 2, seed);
    const auto start = std::chrono::steady_clock::now();
    for (int it = 0; it < iterations; ++it) {
      LossGrad topo = eval_spec(E, spec, derive_seed(seed, static_cast<std::uint64_t>(it)));
      E -= 0.01 * topo.gradient;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    csv << n << ',' << seconds << '\n';
    std::cout << "n=" << n << ": " << seconds << " s for " << iterations << " iterations\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"topology-aware embedding toolkit"};
  app.require_subcommand(1);

  std::string input, config_path, out_dir = ".", filtration_flag = "weak-alpha";
  std::string embed_out;  // empty keeps the config file's output directory
  std::string sizes_flag = "100,1000";
  int rips_max_dim = 1;
  double lr = 0.01;
  int epochs = 500;
  int iterations = 100;
  long long seed = 0;
  double lambda_override = -1.0;
  double lr_override = -1.0;
  int epochs_override = -1;
  long long seed_override = -1;

  auto* persist = app.add_subcommand("persist", "compute persistence diagrams of a point cloud");
  persist->add_option("--input", input, "point cloud CSV")->required();
  persist->add_option("--filtration", filtration_flag, "weak-alpha | rips");
  persist->add_option("--rips-max-dim", rips_max_dim, "top homology dimension for rips");
  persist->add_option("--out", out_dir, "output directory");

  auto* optimize = app.add_subcommand("optimize", "pure topological optimization of a cloud");
  optimize->add_option("--input", input, "point cloud CSV")->required();
  optimize->add_option("--config", config_path, "topological loss spec JSON")->required();
  optimize->add_option("--lr", lr, "learning rate");
  optimize->add_option("--epochs", epochs, "maximum epochs");
  optimize->add_option("--seed", seed, "random seed");
  optimize->add_option("--out", out_dir, "output directory");

  auto* embed = app.add_subcommand("embed", "regularized embedding per experiment config");
  embed->add_option("--config", config_path, "experiment config JSON")->required();
  embed->add_option("--out", embed_out, "output directory override");
  embed->add_option("--lambda-top", lambda_override, "override regularization strength");
  embed->add_option("--lr", lr_override, "override learning rate");
  embed->add_option("--epochs", epochs_override, "override epoch count");
  embed->add_option("--seed", seed_override, "override random seed");

  auto* pseudo = app.add_subcommand("pseudotime", "circular pseudotimes from a 2D embedding");
  pseudo->add_option("--input", input, "embedding CSV")->required();
  pseudo->add_option("--out", out_dir, "output directory");

  auto* bench = app.add_subcommand("bench", "runtime of cycle optimization vs. dataset size");
  bench->add_option("--sizes", sizes_flag, "comma-separated dataset sizes");
  bench->add_option("--iterations", iterations, "iterations per size");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--out", out_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);  // CLI11 consumes tokens back to front
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (persist->parsed()) return cmd_persist(input, filtration_flag, rips_max_dim, out_dir);
    if (optimize->parsed())
      return cmd_optimize(input, config_path, lr, epochs, static_cast<std::uint64_t>(seed),
                          out_dir);
    if (embed->parsed())
      return cmd_embed(config_path, embed_out, lambda_override, lr_override, epochs_override,
                       seed_override);
    if (pseudo->parsed()) return cmd_pseudotime(input, out_dir);
    if (bench->parsed())
      return cmd_bench(sizes_flag, iterations, static_cast<std::uint64_t>(seed), out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace topoflux
