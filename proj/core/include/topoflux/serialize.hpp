#pragma once

#include <string>
#include <vector>

#include "topoflux/optimizer.hpp"
#include "topoflux/persistence.hpp"
#include "topoflux/topo_loss.hpp"

namespace topoflux {

/// Loss-spec JSON:
///   {"filtration": "weak-alpha" | {"rips": {"max_dim": k}},
///    "terms": [{"k":, "i":, "j": int|"inf", "mu":, "p":, "q":, "weight":,
///               "sampling": {"f":, "n":}?, "functional": {"tau":}?}]}
TopoLossSpec parse_loss_spec(const std::string& json_text);
TopoLossSpec load_loss_spec(const std::string& path);
std::string loss_spec_to_json(const TopoLossSpec& spec);

/// Diagram JSON: per dimension {dim, regular: [[b,d],...], essential: [b,...],
/// pairs: [[birth_vertices, death_vertices],...]}.
std::string diagrams_to_json(const std::vector<PersistenceDiagram>& dgms,
                             const Filtration& filtration);

/// Trace CSV with header epoch,l_emb,l_top,l_tot.
void write_trace_csv(const std::string& path, const RunTrace& trace);

/// One-object JSON summary of a finished run.
std::string trace_summary_json(const RunTrace& trace);

/// Everything an `embed` invocation needs.
struct ExperimentConfig {
  // Exactly one input source.
  std::string point_csv;
  std::string edge_list;
  struct Generator {
    std::string kind;  // "synthetic-cycle" | "gaussian"
    int n = 50;
    int d = 500;
    double noise = 0.45;
  };
  std::optional<Generator> generator;

  std::string embedder;  // pca | umap | inner-product | deepwalk
  TopoLossSpec loss;
  RunConfig run;
  int embed_dim = 2;
  int umap_neighbors = 15;
  int umap_negatives = 5;
  std::string out_dir = ".";
};

/// Parses an experiment JSON file; `loss` may be inline or a path string
/// resolved relative to the config file.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace topoflux
