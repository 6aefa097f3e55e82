#include "topoflux/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "topoflux/errors.hpp"

namespace topoflux {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open JSON file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

FiltrationChoice parse_filtration(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "weak-alpha") return FiltrationChoice::weak_alpha();
    throw ParseError("unknown filtration \"" + j.get<std::string>() + "\"");
  }
  if (j.is_object() && j.contains("rips"))
    return FiltrationChoice::rips(j["rips"].value("max_dim", 1));
  throw ParseError("filtration must be \"weak-alpha\" or {\"rips\": {\"max_dim\": k}}");
}

LossTerm parse_term(const json& j) {
  LossTerm t;
  t.hom_dim = j.value("k", 1);
  t.rank_lo = j.value("i", 1);
  if (j.contains("j")) {
    if (j["j"].is_string() && j["j"].get<std::string>() == "inf")
      t.rank_hi = kInfiniteRank;
    else
      t.rank_hi = j["j"].get<int>();
  }
  t.sign = j.value("mu", -1);
  t.p = j.value("p", 1.0);
  t.q = j.value("q", 0.0);
  t.weight = j.value("weight", 1.0);
  if (j.contains("sampling")) {
    SamplingParams s;
    s.fraction = j["sampling"].value("f", 1.0);
    s.repeats = j["sampling"].value("n", 1);
    t.sampling = s;
  }
  if (j.contains("functional")) {
    FunctionalParams f;
    f.tau = j["functional"].value("tau", 1.0);
    t.functional = f;
  }
  return t;
}

}  // namespace

TopoLossSpec parse_loss_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed loss spec JSON: ") + e.what());
  }
  TopoLossSpec spec;
  if (!j.contains("filtration")) throw ParseError("loss spec misses \"filtration\"");
  spec.filtration = parse_filtration(j["filtration"]);
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    throw ParseError("loss spec needs a nonempty \"terms\" array");
  for (const auto& t : j["terms"]) spec.terms.push_back(parse_term(t));
  spec.validate();
  return spec;
}

TopoLossSpec load_loss_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open loss spec: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_loss_spec(buf.str());
}

std::string loss_spec_to_json(const TopoLossSpec& spec) {
  json j;
  if (spec.filtration.kind == FiltrationChoice::Kind::weak_alpha)
    j["filtration"] = "weak-alpha";
  else
    j["filtration"] = {{"rips", {{"max_dim", spec.filtration.rips_max_dim}}}};
  j["terms"] = json::array();
  for (const LossTerm& t : spec.terms) {
    json jt{{"k", t.hom_dim}, {"i", t.rank_lo}, {"mu", t.sign},
            {"p", t.p},       {"q", t.q},       {"weight", t.weight}};
    if (t.rank_hi == kInfiniteRank)
      jt["j"] = "inf";
    else
      jt["j"] = t.rank_hi;
    if (t.sampling) jt["sampling"] = {{"f", t.sampling->fraction}, {"n", t.sampling->repeats}};
    if (t.functional) jt["functional"] = {{"tau", t.functional->tau}};
    j["terms"].push_back(jt);
  }
  return j.dump(2);
}

std::string diagrams_to_json(const std::vector<PersistenceDiagram>& dgms,
                             const Filtration& filtration) {
  json out = json::array();
  for (const PersistenceDiagram& d : dgms) {
    json jd{{"dim", d.dim}};
    jd["regular"] = json::array();
    jd["essential"] = json::array();
    jd["pairs"] = json::array();
    for (const DiagramPoint& p : d.regular) {
      jd["regular"].push_back({p.birth, p.death});
      jd["pairs"].push_back({filtration[p.birth_index].simplex.vertices(),
                             filtration[p.death_index].simplex.vertices()});
    }
    for (const EssentialPoint& e : d.essential) jd["essential"].push_back(e.birth);
    out.push_back(jd);
  }
  return out.dump(2);
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write trace file: " + path);
  out.precision(17);
  out << "epoch,l_emb,l_top,l_tot\n";
  for (std::size_t i = 0; i < trace.epochs.size(); ++i) {
    const EpochRecord& r = trace.epochs[i];
    out << i << ',' << r.embedding_loss << ',' << r.topological_loss << ',' << r.total_loss
        << '\n';
  }
}

std::string trace_summary_json(const RunTrace& trace) {
  json j{{"epochs", trace.epochs.size()},
         {"final_embedding_loss", trace.final_embedding_loss},
         {"final_topological_loss", trace.final_topological_loss},
         {"wall_seconds", trace.wall_seconds},
         {"diverged", trace.diverged},
         {"stopped_by_stagnation", trace.stopped_by_stagnation}};
  return j.dump(2);
}

ExperimentConfig load_experiment_config(const std::string& path) {
  json j = read_json_file(path);
  const auto base = std::filesystem::path(path).parent_path();

  ExperimentConfig cfg;
  if (!j.contains("input")) throw ParseError("experiment config misses \"input\"");
  const json& input = j["input"];
  int sources = 0;
  if (input.contains("point_csv")) {
    cfg.point_csv = (base / input["point_csv"].get<std::string>()).string();
    ++sources;
  }
  if (input.contains("edge_list")) {
    cfg.edge_list = (base / input["edge_list"].get<std::string>()).string();
    ++sources;
  }
  if (input.contains("generator")) {
    ExperimentConfig::Generator g;
    g.kind = input["generator"].value("kind", "synthetic-cycle");
    g.n = input["generator"].value("n", 50);
    g.d = input["generator"].value("d", 500);
    g.noise = input["generator"].value("noise", 0.45);
    cfg.generator = g;
    ++sources;
  }
  if (sources != 1) throw ParseError("experiment config needs exactly one input source");

  cfg.embedder = j.value("embedder", "pca");
  if (cfg.embedder != "pca" && cfg.embedder != "umap" && cfg.embedder != "inner-product" &&
      cfg.embedder != "deepwalk")
    throw ParseError("unknown embedder \"" + cfg.embedder + "\"");

  if (!j.contains("loss")) throw ParseError("experiment config misses \"loss\"");
  if (j["loss"].is_string())
    cfg.loss = load_loss_spec((base / j["loss"].get<std::string>()).string());
  else
    cfg.loss = parse_loss_spec(j["loss"].dump());

  if (j.contains("run")) {
    const json& run = j["run"];
    cfg.run.lambda_top = run.value("lambda_top", cfg.run.lambda_top);
    cfg.run.learning_rate = run.value("lr", cfg.run.learning_rate);
    cfg.run.max_epochs = run.value("epochs", cfg.run.max_epochs);
    cfg.run.seed = run.value("seed", cfg.run.seed);
    cfg.run.stop_tolerance = run.value("stop_tolerance", cfg.run.stop_tolerance);
    cfg.run.stagnation_enabled = run.value("stagnation", cfg.run.stagnation_enabled);
    const std::string mode = run.value("mode", "regularized");
    if (mode == "regularized")
      cfg.run.mode = RunMode::regularized;
    else if (mode == "topological-only")
      cfg.run.mode = RunMode::topological_only;
    else if (mode == "embedding-only")
      cfg.run.mode = RunMode::embedding_only;
    else
      throw ParseError("unknown run mode \"" + mode + "\"");
  }
  cfg.embed_dim = j.value("embed_dim", 2);
  if (j.contains("umap")) {
    cfg.umap_neighbors = j["umap"].value("k", cfg.umap_neighbors);
    cfg.umap_negatives = j["umap"].value("negatives", cfg.umap_negatives);
  }
  if (j.contains("out")) cfg.out_dir = (base / j["out"].get<std::string>()).string();
  return cfg;
}

}  // namespace topoflux
