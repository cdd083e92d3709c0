// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <memory>
#include <ostream>

#include "subprop/cluster.hpp"
#include "subprop/errors.hpp"
#include "subprop/eval.hpp"
#include "subprop/greedy.hpp"
#include "subprop/io.hpp"
#include "subprop/objective.hpp"
#include "subprop/simgraph.hpp"
#include "subprop/synth.hpp"

namespace subprop::cli {
namespace {

using nlohmann::json;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown flag, bad value)\n"
    "  3  file missing or unwritable\n"
    "  4  malformed input file\n"
    "  5  input violates a data invariant\n"
    "  6  instance too large for the brute-force oracle\n";

struct SynthFlags {
  SynthConfig config;
  std::string out_pool;
  std::string out_gt;
};

struct ModelFlags {
  std::string pool;
  std::string reward_transform = "none";
  int neighbor_rank = 7;
  int adjacency_dilation = 1;
  int coarse_threshold = 8;
  std::vector<int> clusters_per_layer;
  std::string clusters_file;
  std::string graph_cache;
};

struct SelectFlags {
  std::size_t k = 100;
  double alpha = 3.9;
  double beta = 2.0;
  std::string algorithm = "lazy";
  std::string out;
};

struct ScoreFlags {
  std::string pool;
  std::string reward_transform = "none";
  std::string gt;
  std::string selection;
  std::size_t k = 0;  // 0: every selected proposal
  std::size_t step = 1;
  std::string out;
};

// Records each input file with its content hash for provenance.
class Inputs {
 public:
  std::string read(const std::string& role, const std::string& path) {
    std::string text = read_text_file(path);
    record_[role] = {{"path", path}, {"sha256", sha256_hex(text)}};
    return text;
  }
  const json& record() const { return record_; }

 private:
  json record_ = json::object();
};

RewardTransform transform_of(const std::string& name) {
  return name == "logistic" ? RewardTransform::kLogistic : RewardTransform::kNone;
}

SegmentPool read_pool(Inputs& inputs, const std::string& path, const std::string& transform) {
  const std::string text = inputs.read("pool", path);
  return parse_pool(parse_json_text(text, path), LoadOptions{transform_of(transform)});
}

json model_config(const ModelFlags& f) {
  return json{{"pool", f.pool},
              {"reward_transform", f.reward_transform},
              {"m", f.neighbor_rank},
              {"adjacency_dilation", f.adjacency_dilation},
              {"coarse_threshold", f.coarse_threshold},
              {"clusters_per_layer", f.clusters_per_layer},
              {"clusters", f.clusters_file},
              {"graph_cache", f.graph_cache}};
}

json select_config(const SelectFlags& f) {
  return json{{"k", f.k}, {"alpha", f.alpha}, {"beta", f.beta},
              {"algorithm", f.algorithm}, {"out", f.out}};
}

json with_provenance(json doc, const std::string& command, json config, const Inputs& inputs) {
  config["command"] = command;
  doc["config"] = std::move(config);
  doc["inputs"] = inputs.record();
  return doc;
}

struct Model {
  SegmentPool pool;
  SimilarityGraph graph;
  ClusterAssignment clusters;
};

Model build_model(const ModelFlags& f, Inputs& inputs, bool need_clusters) {
  Model m;
  m.pool = read_pool(inputs, f.pool, f.reward_transform);
  const GraphParams gp{f.neighbor_rank, f.adjacency_dilation};
  m.graph = f.graph_cache.empty() ? build_graph(m.pool, gp)
                                  : load_or_build_graph(f.graph_cache, m.pool, gp);
  if (!need_clusters) return m;
  if (!f.clusters_file.empty()) {
    const std::string text = inputs.read("clusters", f.clusters_file);
    m.clusters = clusters_from_json(parse_json_text(text, f.clusters_file), m.pool);
  } else {
    m.clusters = cluster_pool(m.pool, m.graph, ClusterPolicy{f.coarse_threshold, f.clusters_per_layer});
  }
  return m;
}

void add_model_flags(CLI::App* cmd, ModelFlags& f, bool allow_cluster_file) {
  cmd->add_option("--pool", f.pool, "Segment pool JSON")->required();
  cmd->add_option("--reward-transform", f.reward_transform,
                  "Map raw rewards s to 1/(1+exp(-s)) before validation")
      ->check(CLI::IsMember({"none", "logistic"}))
      ->capture_default_str();
  cmd->add_option("--m", f.neighbor_rank, "Neighbour rank for local scales")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--dilation", f.adjacency_dilation, "Same-layer adjacency dilation (cells)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--coarse-threshold", f.coarse_threshold,
                  "Layers with at most this many segments become singleton clusters")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--clusters-per-layer", f.clusters_per_layer,
                  "Explicit cluster count per layer, comma separated")
      ->delimiter(',');
  if (allow_cluster_file) {
    cmd->add_option("--clusters", f.clusters_file, "Precomputed cluster file");
  }
  cmd->add_option("--graph-cache", f.graph_cache,
                  "Graph cache file; reused when it matches the pool and parameters");
}

void add_objective_flags(CLI::App* cmd, SelectFlags& f, bool with_algorithm) {
  cmd->add_option("--k", f.k, "Number of proposals to select")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Diversity weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--beta", f.beta, "Reward weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (with_algorithm) {
    cmd->add_option("--algorithm", f.algorithm, "Greedy variant")
        ->check(CLI::IsMember({"naive", "lazy"}))
        ->capture_default_str();
  }
  cmd->add_option("--out", f.out, "Output selection JSON")->required();
}

void add_score_flags(CLI::App* cmd, ScoreFlags& f, const char* k_name, const char* out_help) {
  cmd->add_option("--pool", f.pool, "Segment pool JSON")->required();
  cmd->add_option("--reward-transform", f.reward_transform, "Reward transform used at load")
      ->check(CLI::IsMember({"none", "logistic"}))
      ->capture_default_str();
  cmd->add_option("--gt", f.gt, "Ground-truth JSON")->required();
  cmd->add_option("--selection", f.selection, "Selection JSON from select or oracle")->required();
  cmd->add_option(k_name, f.k, "Proposal budget (default: all selected)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step", f.step, "Budget step of the curve")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--out", f.out, out_help)->required();
}

json score_config(const ScoreFlags& f, std::size_t budget) {
  return json{{"pool", f.pool}, {"reward_transform", f.reward_transform},
              {"gt", f.gt},     {"selection", f.selection},
              {"k", budget},    {"step", f.step},
              {"out", f.out}};
}

int run_synth(const SynthFlags& f, std::ostream& out) {
  const SynthOutput s = generate(f.config);
  const json config{{"command", "synth"},
                    {"synth", synth_config_to_json(f.config)},
                    {"out_pool", f.out_pool},
                    {"out_gt", f.out_gt}};
  json pool_doc = pool_to_json(s.pool);
  pool_doc["provenance"] = config;
  json gt_doc = ground_truth_to_json(s.ground_truth);
  gt_doc["provenance"] = config;
  write_text_file(f.out_pool, dump_json(pool_doc));
  write_text_file(f.out_gt, dump_json(gt_doc));
  out << "wrote " << s.pool.size() << " segments in " << s.pool.num_layers() << " layers and "
      << s.ground_truth.objects().size() << " objects\n";
  return kOk;
}

int run_cluster(const ModelFlags& f, const std::string& out_path, std::ostream& out) {
  Inputs inputs;
  const Model m = build_model(f, inputs, /*need_clusters=*/true);
  json config = model_config(f);
  config["out"] = out_path;
  write_text_file(out_path, dump_json(with_provenance(clusters_to_json(m.clusters, m.pool),
                                                      "cluster", config, inputs),
                                      /*pretty=*/true));
  out << "wrote " << m.clusters.total_clusters() << " clusters\n";
  return kOk;
}

int run_select(const ModelFlags& mf, const SelectFlags& sf, bool oracle, std::ostream& out) {
  Inputs inputs;
  const Model m = build_model(mf, inputs, /*need_clusters=*/true);
  const ObjectiveParams params{sf.alpha, sf.beta, sf.k};
  params.validate(m.pool.size());
  const Objective objective(m.pool, m.graph, m.clusters, params);
  SelectionResult result;
  if (oracle) {
    result = brute_force(m.pool, objective);
  } else if (parse_algorithm(sf.algorithm) == Algorithm::kNaive) {
    result = greedy_naive(m.pool, objective);
  } else {
    result = greedy_lazy(m.pool, objective);
  }
  json config = model_config(mf);
  config.update(select_config(sf));
  if (oracle) config.erase("algorithm");
  write_text_file(sf.out, dump_json(with_provenance(selection_to_json(result, params),
                                                    oracle ? "oracle" : "select", config, inputs),
                                    /*pretty=*/true));
  out << "selected " << result.order.size() << " proposals, F = "
      << (result.objective_trace.empty() ? 0.0 : result.objective_trace.back()) << "\n";
  return kOk;
}

struct Scoring {
  Inputs inputs;
  SegmentPool pool;
  GroundTruth gt;
  SelectionResult selection;
};

Scoring load_scoring(const ScoreFlags& f) {
  Scoring s;
  s.pool = read_pool(s.inputs, f.pool, f.reward_transform);
  s.gt = parse_ground_truth(parse_json_text(s.inputs.read("gt", f.gt), f.gt));
  s.selection = selection_from_json(parse_json_text(s.inputs.read("selection", f.selection), f.selection));
  return s;
}

int run_eval(const ScoreFlags& f, std::ostream& out) {
  Scoring s = load_scoring(f);
  const std::size_t budget = f.k == 0 ? s.selection.order.size() : f.k;
  const Metrics metrics = score_selection(s.selection.order, s.pool, s.gt, budget);
  json doc{{"metrics", metrics_to_json(metrics)}};
  write_text_file(f.out, dump_json(with_provenance(std::move(doc), "eval",
                                                   score_config(f, budget), s.inputs),
                                   /*pretty=*/true));
  out << "J_i = " << metrics.j_instance << ", recall@0.5 = " << metrics.recall_at_half << "\n";
  return kOk;
}

int run_sweep(const ScoreFlags& f, std::ostream& out) {
  Scoring s = load_scoring(f);
  const std::size_t k_max = f.k == 0 ? s.selection.order.size() : f.k;
  const BudgetCurve curve = budget_curve(s.selection.order, s.pool, s.gt, k_max, f.step);
  write_text_file(f.out, curve_to_csv(curve));
  // CSV has no room for metadata; provenance goes to a sidecar.
  json sidecar{{"auc_budget", curve.auc_budget}};
  write_text_file(f.out + ".provenance.json",
                  dump_json(with_provenance(std::move(sidecar), "sweep",
                                            score_config(f, k_max), s.inputs),
                            /*pretty=*/true));
  out << "auc_budget = " << curve.auc_budget << "\n";
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kUsage;
    case ErrorKind::kIo:
      return kIo;
    case ErrorKind::kParse:
      return kParse;
    case ErrorKind::kValidation:
      return kValidation;
    case ErrorKind::kLimit:
      return kLimit;
  }
  return kInternal;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranks object-proposal segments by greedy submodular maximization."};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic pool and ground truth");
  synth_cmd->add_option("--seed", synth.config.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--width", synth.config.grid.width, "Grid width")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--height", synth.config.grid.height, "Grid height")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--objects", synth.config.num_objects, "Number of objects")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--layers", synth.config.num_layers, "Number of layers (>= 2)")
      ->check(CLI::Range(2, 1 << 20))->capture_default_str();
  synth_cmd->add_option("--parts", synth.config.parts_per_object, "Strips per object below its home layer")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--tiles", synth.config.background_tiles, "Background tiles in the finest layer")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth_cmd->add_option("--reward-noise", synth.config.reward_noise_std, "Reward noise std")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  synth_cmd->add_option("--feature-noise", synth.config.feature_noise_std, "Feature noise std")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  synth_cmd->add_option("--out-pool", synth.out_pool, "Output pool JSON")->required();
  synth_cmd->add_option("--out-gt", synth.out_gt, "Output ground-truth JSON")->required();

  ModelFlags cluster_model;
  std::string cluster_out;
  auto* cluster_cmd = app.add_subcommand("cluster", "Compute exemplar clusters per layer");
  add_model_flags(cluster_cmd, cluster_model, /*allow_cluster_file=*/false);
  cluster_cmd->add_option("--out", cluster_out, "Output cluster JSON")->required();

  ModelFlags select_model;
  SelectFlags select;
  auto* select_cmd = app.add_subcommand("select", "Select a ranked proposal subset");
  add_model_flags(select_cmd, select_model, /*allow_cluster_file=*/true);
  add_objective_flags(select_cmd, select, /*with_algorithm=*/true);

  ModelFlags oracle_model;
  SelectFlags oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for small pools");
  add_model_flags(oracle_cmd, oracle_model, /*allow_cluster_file=*/true);
  add_objective_flags(oracle_cmd, oracle, /*with_algorithm=*/false);

  ScoreFlags eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a selection against ground truth");
  add_score_flags(eval_cmd, eval, "--k", "Output metrics JSON");

  ScoreFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Recall and J_i over proposal budgets as CSV");
  add_score_flags(sweep_cmd, sweep, "--k-max", "Output curve CSV");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "subprop: usage error: " << one_line(e.what()) << "\n";
    return kUsage;
  }

  try {
    if (*synth_cmd) return run_synth(synth, out);
    if (*cluster_cmd) return run_cluster(cluster_model, cluster_out, out);
    if (*select_cmd) return run_select(select_model, select, /*oracle=*/false, out);
    if (*oracle_cmd) return run_select(oracle_model, oracle, /*oracle=*/true, out);
    if (*eval_cmd) return run_eval(eval, out);
    if (*sweep_cmd) return run_sweep(sweep, out);
  } catch (const Error& e) {
    err << "subprop: error: " << one_line(e.what()) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "subprop: internal error: " << one_line(e.what()) << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace subprop::cli
