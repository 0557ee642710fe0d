// sscnet: sparse-subspace-clustering analysis of layer activations.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "sscnet/analysis.hpp"
#include "sscnet/error.hpp"
#include "sscnet/graph_metrics.hpp"
#include "sscnet/kernels.hpp"
#include "sscnet/matrix_io.hpp"
#include "sscnet/output.hpp"
#include "sscnet/similarity.hpp"
#include "sscnet/ssc_solver.hpp"
#include "sscnet/synthetic.hpp"

namespace fs = std::filesystem;
using namespace sscnet;

namespace {

struct SharedFlags {
  SscConfig ssc;
  bool no_normalize = false;
  bool fixed_mu = false;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double threshold = 0.0;
  int threads = 0;

  AnalysisOptions options() const {
    AnalysisOptions o;
    o.ssc = ssc;
    o.ssc.normalize_columns = !no_normalize;
    o.ssc.adaptive_mu = !fixed_mu;
    o.threshold = threshold;
    return o;
  }
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--tau", f.ssc.tau, "Data-fidelity weight")->capture_default_str();
  cmd->add_option("--mu", f.ssc.mu_init, "Initial ADMM penalty")->capture_default_str();
  cmd->add_option("--max-iters", f.ssc.max_iters, "ADMM iteration cap")->capture_default_str();
  cmd->add_option("--tol", f.ssc.tol_abs, "Stop when max|Z - C| falls below this")
      ->capture_default_str();
  cmd->add_option("--dual-tol", f.ssc.dual_tol, "Also require mu*max|dC| below this (0 = off)")
      ->capture_default_str();
  cmd->add_flag("--fixed-mu", f.fixed_mu, "Keep the ADMM penalty at its initial value");
  cmd->add_flag("--no-normalize", f.no_normalize, "Skip unit-norm column scaling");
  cmd->add_option("--seed", f.seed, "Seed for randomized steps")->capture_default_str();
  cmd->add_option("--out-dir", f.out_dir, "Directory for outputs")->capture_default_str();
  cmd->add_option("--threshold", f.threshold, "Zero affinities below this (default 0)");
  cmd->add_option("--threads", f.threads, "OpenMP threads (overrides SSCNET_NUM_THREADS)");
}

fs::path prepare_out_dir(const SharedFlags& f) {
  fs::path dir(f.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory '" + dir.string() + "'");
  return dir;
}

AffinityMatrix affinity_from_input(const std::string& path, bool is_affinity,
                                   const SharedFlags& f, nlohmann::json* solve_info) {
  if (is_affinity) return AffinityMatrix(read_matrix(path));
  LayerGraph graph = layer_graph(load_matrix(path), f.options());
  if (solve_info != nullptr) {
    *solve_info = {{"iterations", graph.solve.iterations},
                   {"converged", graph.solve.converged},
                   {"objective", graph.solve.objective}};
  }
  return std::move(graph.affinity);
}

void print(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse subspace clustering analysis of neural-network activations"};
  app.require_subcommand(1);

  SharedFlags flags;

  // ssc
  auto* ssc_cmd = app.add_subcommand("ssc", "Solve SSC for one activation matrix");
  std::string ssc_input, ssc_labels;
  std::string ssc_format = "npy";
  ssc_cmd->add_option("--input", ssc_input, "d x N activation matrix (.npy/.csv)")->required();
  ssc_cmd->add_option("--labels", ssc_labels, "Optional labels file for modularity");
  ssc_cmd->add_option("--format", ssc_format, "Output matrix format")
      ->check(CLI::IsMember({"npy", "csv"}));
  add_shared(ssc_cmd, flags);

  // cka
  auto* cka_cmd = app.add_subcommand("cka", "SSC-CKA and Linear-CKA between two activation matrices");
  std::vector<std::string> cka_inputs;
  cka_cmd->add_option("--input", cka_inputs, "Two activation matrices over the same samples")
      ->required()
      ->expected(2);
  add_shared(cka_cmd, flags);

  // modularity
  auto* mod_cmd = app.add_subcommand("modularity", "Modularity of the SSC graph under given labels");
  std::string mod_input, mod_labels;
  bool mod_is_affinity = false;
  mod_cmd->add_option("--input", mod_input, "Activation matrix, or affinity with --affinity")
      ->required();
  mod_cmd->add_option("--labels", mod_labels, "Labels file")->required();
  mod_cmd->add_flag("--affinity", mod_is_affinity, "Input is already an N x N affinity");
  add_shared(mod_cmd, flags);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Spectral embedding of the SSC graph");
  std::string embed_input, embed_mode = "affinity";
  Index embed_dim = 2;
  bool embed_is_affinity = false;
  embed_cmd->add_option("--input", embed_input, "Activation matrix, or affinity with --affinity")
      ->required();
  embed_cmd->add_option("--dim", embed_dim, "Embedding dimension")->capture_default_str();
  embed_cmd->add_option("--mode", embed_mode, "affinity | laplacian")
      ->check(CLI::IsMember({"affinity", "laplacian"}))
      ->capture_default_str();
  embed_cmd->add_flag("--affinity", embed_is_affinity, "Input is already an N x N affinity");
  add_shared(embed_cmd, flags);

  // instances
  auto* inst_cmd = app.add_subcommand("instances", "Per-instance neighbourhoods and SSC labels");
  std::string inst_manifest, inst_layer;
  std::optional<int> inst_epoch;
  std::vector<Index> inst_queries;
  Index inst_k = 8;
  inst_cmd->add_option("--manifest", inst_manifest, "Layer manifest (JSON)")->required();
  inst_cmd->add_option("--layer", inst_layer, "Layer name (default: last in manifest)");
  inst_cmd->add_option("--epoch", inst_epoch, "Epoch (default: latest)");
  inst_cmd->add_option("--query", inst_queries, "Sample indices to profile");
  inst_cmd->add_option("--k", inst_k, "Neighbours per query")->capture_default_str();
  add_shared(inst_cmd, flags);

  // dynamics
  auto* dyn_cmd = app.add_subcommand("dynamics", "Layer-vs-final-epoch training dynamics");
  std::string dyn_manifest;
  dyn_cmd->add_option("--manifest", dyn_manifest, "Layer manifest with epochs")->required();
  add_shared(dyn_cmd, flags);

  // pairwise
  auto* pair_cmd = app.add_subcommand("pairwise", "Pairwise layer SSC-CKA / Linear-CKA heatmaps");
  std::string pair_manifest;
  std::optional<int> pair_epoch;
  bool pair_heatmap = false;
  pair_cmd->add_option("--manifest", pair_manifest, "Layer manifest")->required();
  pair_cmd->add_option("--epoch", pair_epoch, "Epoch to compare (default: latest per layer)");
  pair_cmd->add_flag("--heatmap", pair_heatmap, "Also emit SVG heatmaps");
  add_shared(pair_cmd, flags);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate union-of-subspaces data");
  SyntheticConfig synth;
  synth_cmd->add_option("--subspaces", synth.num_subspaces)->capture_default_str();
  synth_cmd->add_option("--ambient", synth.ambient_dim)->capture_default_str();
  synth_cmd->add_option("--dim", synth.subspace_dim)->capture_default_str();
  synth_cmd->add_option("--points", synth.points_per_subspace)->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise)->capture_default_str();
  add_shared(synth_cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    kernels::apply_thread_env();
    if (flags.threads > 0) omp_set_num_threads(flags.threads);

    if (*ssc_cmd) {
      const fs::path dir = prepare_out_dir(flags);
      const ActivationMatrix x = load_matrix(ssc_input);
      const AnalysisOptions opts = flags.options();
      const SscSolution sol = solve_ssc(x, opts.ssc);
      AffinityMatrix w = build_affinity(sol.coefficients);
      if (opts.threshold > 0.0) w = threshold_affinity(w, opts.threshold);
      save_matrix(dir / ("coefficients." + ssc_format), sol.coefficients.values());
      save_matrix(dir / ("affinity." + ssc_format), w.values());
      nlohmann::json doc = {{"ssc_config", to_json(opts.ssc)}, {"solve", to_json(sol.report)}};
      if (!ssc_labels.empty()) {
        doc["modularity"] = modularity(w, load_labels(ssc_labels));
      }
      write_json(dir / "ssc.json", doc);
      print({{"iterations", sol.report.iterations}, {"converged", sol.report.converged}});
    } else if (*cka_cmd) {
      const ActivationMatrix a = load_matrix(cka_inputs[0]);
      const ActivationMatrix b = load_matrix(cka_inputs[1]);
      const AnalysisOptions opts = flags.options();
      const LayerGraph ga = layer_graph(a, opts);
      const LayerGraph gb = layer_graph(b, opts);
      const nlohmann::json doc = {{"ssc_cka", cka(ga.affinity, gb.affinity).value},
                                  {"linear_cka", cka(linear_gram(a), linear_gram(b)).value}};
      write_json(prepare_out_dir(flags) / "cka.json", doc);
      print(doc);
    } else if (*mod_cmd) {
      nlohmann::json solve_info;
      const AffinityMatrix w = affinity_from_input(mod_input, mod_is_affinity, flags, &solve_info);
      const nlohmann::json doc = {{"modularity", modularity(w, load_labels(mod_labels))},
                                  {"solve", solve_info}};
      write_json(prepare_out_dir(flags) / "modularity.json", doc);
      print(doc);
    } else if (*embed_cmd) {
      const AffinityMatrix w = affinity_from_input(embed_input, embed_is_affinity, flags, nullptr);
      const Embedding e = spectral_embedding(
          w, embed_dim,
          embed_mode == "affinity" ? EmbeddingMode::affinity : EmbeddingMode::normalized_laplacian);
      const fs::path dir = prepare_out_dir(flags);
      save_matrix(dir / "embedding.csv", e.coordinates);
      std::vector<double> eig(e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size());
      const nlohmann::json doc = {{"mode", embed_mode}, {"dim", embed_dim}, {"eigenvalues", eig}};
      write_json(dir / "embedding.json", doc);
      print(doc);
    } else if (*inst_cmd) {
      const AnalysisReport report =
          run_instance_analysis(load_manifest(inst_manifest), inst_layer, inst_epoch,
                                inst_queries, inst_k, flags.options());
      write_report(report, prepare_out_dir(flags), false);
      print(to_json(report)["instances"]["summary"]);
    } else if (*dyn_cmd) {
      const AnalysisReport report = run_training_dynamics(load_manifest(dyn_manifest), flags.options());
      write_report(report, prepare_out_dir(flags), false);
      std::cout << "wrote " << (fs::path(flags.out_dir) / "dynamics.json").string() << "\n";
    } else if (*pair_cmd) {
      const AnalysisReport report =
          run_pairwise_architecture(load_manifest(pair_manifest), flags.options(), pair_epoch);
      const fs::path dir = prepare_out_dir(flags);
      write_report(report, dir, pair_heatmap);
      std::cout << "wrote " << (dir / "pairwise.json").string() << "\n";
    } else if (*synth_cmd) {
      synth.seed = flags.seed;
      const SyntheticData data = gen_synthetic(synth);
      const fs::path dir = prepare_out_dir(flags);
      save_matrix(dir / "X.npy", data.x.values());
      save_labels(dir / "labels.txt", data.labels);
      LayerManifest manifest;
      manifest.records.push_back(LayerRecord{"synthetic", std::nullopt, dir / "X.npy", SampleAxis::columns});
      manifest.labels_path = dir / "labels.txt";
      write_json(dir / "manifest.json", manifest_to_json(manifest, dir));
      print({{"samples", data.x.samples()}, {"neurons", data.x.neurons()}});
    }
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
