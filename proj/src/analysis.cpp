#include "sscnet/analysis.hpp"

#include <algorithm>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/matrix_io.hpp"
#include "sscnet/similarity.hpp"

namespace sscnet {

namespace {

struct LoadedRecord {
  LayerRecord record;
  ActivationMatrix x;
};

LoadedRecord load_checked(const LayerRecord& record, Index& expected_n) {
  ActivationMatrix x = load_record(record);
  if (expected_n < 0) {
    expected_n = x.samples();
  } else if (x.samples() != expected_n) {
    throw Error(ErrorCode::dimension_mismatch,
                "layer '" + record.layer_name + "'" +
                    (record.epoch ? " epoch " + std::to_string(*record.epoch) : "") + " has " +
                    std::to_string(x.samples()) + " samples, expected " +
                    std::to_string(expected_n));
  }
  return LoadedRecord{record, std::move(x)};
}

std::optional<LabelVector> load_optional_labels(const std::optional<std::filesystem::path>& path,
                                                Index n) {
  if (!path) return std::nullopt;
  LabelVector labels = load_labels(*path);
  if (static_cast<Index>(labels.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch,
                path->string() + ": " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(n) + " samples");
  }
  return labels;
}

LabelVector require_labels(const LayerManifest& manifest, Index n, const char* suite) {
  if (!manifest.labels_path) {
    throw Error(ErrorCode::invalid_input, std::string(suite) + ": manifest has no labels_path");
  }
  return *load_optional_labels(manifest.labels_path, n);
}

void require_varying(const ActivationMatrix& x, const std::string& layer) {
  const Matrix& v = x.values();
  for (Index j = 1; j < v.cols(); ++j) {
    if (v.col(j) != v.col(0)) return;
  }
  throw Error(ErrorCode::degenerate_kernel,
              "layer '" + layer + "' is degenerate: activations are constant across samples");
}

nlohmann::json optional_json(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const SolveSummary& s) {
  return {{"iterations", s.iterations},
          {"converged", s.converged},
          {"final_mu", s.final_mu},
          {"objective", s.objective}};
}

}  // namespace

LayerGraph layer_graph(const ActivationMatrix& x, const AnalysisOptions& options) {
  SscSolution sol = solve_ssc(x, options.ssc);
  AffinityMatrix w = build_affinity(sol.coefficients);
  if (options.threshold > 0.0) w = threshold_affinity(w, options.threshold);
  SolveSummary summary;
  summary.iterations = sol.report.iterations;
  summary.converged = sol.report.converged;
  summary.final_mu = sol.report.final_mu;
  summary.objective = sol.report.objective_values.empty() ? 0.0 : sol.report.objective_values.back();
  return LayerGraph{std::move(w), summary};
}

AnalysisReport run_training_dynamics(const LayerManifest& manifest, const AnalysisOptions& options) {
  AnalysisReport report;
  report.suite = "dynamics";
  report.options = options;
  const std::vector<std::string> layers = layer_order(manifest);
  if (layers.empty()) throw Error(ErrorCode::invalid_input, "dynamics: manifest has no records");

  Index n = -1;
  std::optional<LabelVector> labels;
  for (const std::string& layer : layers) {
    const std::vector<LayerRecord> records = layer_records(manifest, layer);
    if (records.size() < 2) {
      throw Error(ErrorCode::invalid_input,
                  "dynamics: layer '" + layer + "' needs at least two epochs");
    }
    for (const LayerRecord& r : records) {
      if (!r.epoch) {
        throw Error(ErrorCode::invalid_input,
                    "dynamics: layer '" + layer + "' has a record without an epoch");
      }
    }

    // The last record per layer is its final epoch.
    const LoadedRecord final_rec = load_checked(records.back(), n);
    if (!labels) labels = require_labels(manifest, n, "dynamics");
    const LayerGraph final_graph = layer_graph(final_rec.x, options);
    const SimilarityMatrix final_gram = linear_gram(final_rec.x);

    LayerCurve curve;
    curve.layer = layer;
    for (const LayerRecord& r : records) {
      const bool is_final = &r == &records.back();
      std::optional<LoadedRecord> loaded;
      std::optional<LayerGraph> computed;
      if (!is_final) {
        loaded.emplace(load_checked(r, n));
        computed.emplace(layer_graph(loaded->x, options));
      }
      const LayerGraph& graph = is_final ? final_graph : *computed;
      const ActivationMatrix& x = is_final ? final_rec.x : loaded->x;

      curve.epochs.push_back(*r.epoch);
      curve.modularity.push_back(modularity(graph.affinity, *labels));
      curve.ssc_cka_to_final.push_back(cka(graph.affinity, final_graph.affinity).value);
      curve.linear_cka_to_final.push_back(cka(linear_gram(x), final_gram).value);
      curve.solves.push_back(graph.solve);
    }
    report.dynamics.push_back(std::move(curve));
  }
  return report;
}

AnalysisReport run_pairwise_architecture(const LayerManifest& manifest,
                                         const AnalysisOptions& options,
                                         std::optional<int> epoch) {
  AnalysisReport report;
  report.suite = "pairwise";
  report.options = options;
  const std::vector<std::string> layers = layer_order(manifest);
  if (layers.size() < 2) {
    throw Error(ErrorCode::invalid_input, "pairwise: need at least two layers");
  }

  PairwiseSection section;
  std::vector<SimilarityMatrix> ssc_graphs;
  std::vector<SimilarityMatrix> grams;
  std::vector<AffinityMatrix> affinities;
  Index n = -1;
  for (const std::string& layer : layers) {
    const LoadedRecord rec = load_checked(select_record(manifest, layer, epoch), n);
    require_varying(rec.x, layer);
    LayerGraph graph = layer_graph(rec.x, options);
    section.layers.push_back(layer);
    section.epochs.push_back(rec.record.epoch);
    section.solves.push_back(graph.solve);
    ssc_graphs.emplace_back(graph.affinity);
    grams.push_back(linear_gram(rec.x));
    affinities.push_back(std::move(graph.affinity));
  }

  auto named_pairwise = [&](const std::vector<SimilarityMatrix>& mats, const char* kind) {
    for (std::size_t i = 0; i < mats.size(); ++i) {
      if (!(hsic(mats[i], mats[i]) > degeneracy_threshold(mats[i].size()))) {
        throw Error(ErrorCode::degenerate_kernel, std::string("pairwise: ") + kind +
                                                      " graph of layer '" + layers[i] +
                                                      "' is degenerate");
      }
    }
    return pairwise_cka(mats);
  };
  section.ssc_cka = named_pairwise(ssc_graphs, "SSC affinity");
  section.linear_cka = named_pairwise(grams, "linear Gram");

  if (auto labels = load_optional_labels(manifest.labels_path, n)) {
    for (const AffinityMatrix& w : affinities) section.modularity.push_back(modularity(w, *labels));
  }
  report.pairwise = std::move(section);
  return report;
}

AnalysisReport run_instance_analysis(const LayerManifest& manifest, const std::string& layer,
                                     std::optional<int> epoch, std::span<const Index> queries,
                                     Index k, const AnalysisOptions& options) {
  AnalysisReport report;
  report.suite = "instances";
  report.options = options;
  const std::vector<std::string> layers = layer_order(manifest);
  if (layers.empty()) throw Error(ErrorCode::invalid_input, "instances: manifest has no records");
  const std::string chosen = layer.empty() ? layers.back() : layer;

  Index n = -1;
  const LoadedRecord rec = load_checked(select_record(manifest, chosen, epoch), n);
  const LabelVector truth = require_labels(manifest, n, "instances");
  const std::optional<LabelVector> predictions =
      load_optional_labels(manifest.predictions_path, n);
  for (Index q : queries) {
    if (q < 0 || q >= n) {
      throw Error(ErrorCode::index_out_of_range,
                  "instances: query index " + std::to_string(q) + " outside [0, " +
                      std::to_string(n) + ")");
    }
  }

  const LayerGraph graph = layer_graph(rec.x, options);
  const SscLabeling assigned = ssc_labels(graph.affinity, truth);

  InstanceSection section;
  section.layer = chosen;
  section.epoch = rec.record.epoch;
  section.solve = graph.solve;
  section.modularity = modularity(graph.affinity, truth);
  section.summary.ssc_label_accuracy = agreement(assigned.labels, truth);
  section.summary.isolated_nodes = assigned.isolated_nodes;
  if (predictions) {
    section.summary.network_prediction_accuracy = agreement(*predictions, truth);
    section.summary.agreement = agreement(assigned.labels, *predictions);
  }

  const Index count = std::min<Index>(k, n - 1);
  for (Index q : queries) {
    InstanceQuery out;
    out.index = q;
    out.label = truth[q];
    if (predictions) out.prediction = (*predictions)[q];
    out.ssc_label = assigned.labels[q];
    out.profile = class_affinity_profile(graph.affinity, truth, q);
    for (Index j : top_neighbors(graph.affinity, q, count)) {
      out.neighbors.push_back(NeighborEntry{j, truth[j], graph.affinity.values()(q, j)});
    }
    section.queries.push_back(std::move(out));
  }
  report.instances = std::move(section);
  return report;
}

nlohmann::json to_json(const SscConfig& cfg) {
  return {{"tau", cfg.tau},
          {"mu_init", cfg.mu_init},
          {"adaptive_mu", cfg.adaptive_mu},
          {"rho", cfg.rho},
          {"residual_ratio", cfg.residual_ratio},
          {"adapt_iters", cfg.adapt_iters},
          {"max_iters", cfg.max_iters},
          {"tol_abs", cfg.tol_abs},
          {"dual_tol", cfg.dual_tol},
          {"normalize_columns", cfg.normalize_columns}};
}

nlohmann::json to_json(const SolveReport& report) {
  nlohmann::json zero_columns = nlohmann::json::array();
  for (Index j : report.zero_columns) zero_columns.push_back(j);
  return {{"iterations", report.iterations},
          {"converged", report.converged},
          {"final_mu", report.final_mu},
          {"mu_updates", report.mu_updates},
          {"primal_residuals", report.primal_residuals},
          {"objective_values", report.objective_values},
          {"zero_columns", zero_columns}};
}

nlohmann::json to_json(const AnalysisReport& report) {
  nlohmann::json doc;
  doc["suite"] = report.suite;
  doc["ssc_config"] = to_json(report.options.ssc);
  doc["threshold"] = report.options.threshold;

  if (!report.dynamics.empty()) {
    nlohmann::json layers = nlohmann::json::array();
    for (const LayerCurve& c : report.dynamics) {
      nlohmann::json solves = nlohmann::json::array();
      for (const SolveSummary& s : c.solves) solves.push_back(to_json(s));
      layers.push_back({{"layer", c.layer},
                        {"epochs", c.epochs},
                        {"modularity", c.modularity},
                        {"ssc_cka_to_final", c.ssc_cka_to_final},
                        {"linear_cka_to_final", c.linear_cka_to_final},
                        {"solves", solves}});
    }
    doc["dynamics"] = std::move(layers);
  }

  if (report.pairwise) {
    const PairwiseSection& p = *report.pairwise;
    nlohmann::json epochs = nlohmann::json::array();
    for (const auto& e : p.epochs) epochs.push_back(optional_json(e));
    nlohmann::json solves = nlohmann::json::array();
    for (const SolveSummary& s : p.solves) solves.push_back(to_json(s));
    doc["pairwise"] = {{"layers", p.layers},
                       {"epochs", epochs},
                       {"ssc_cka", matrix_json(p.ssc_cka)},
                       {"linear_cka", matrix_json(p.linear_cka)},
                       {"modularity", p.modularity},
                       {"solves", solves}};
  }

  if (report.instances) {
    const InstanceSection& s = *report.instances;
    nlohmann::json queries = nlohmann::json::array();
    for (const InstanceQuery& q : s.queries) {
      nlohmann::json neighbors = nlohmann::json::array();
      for (const NeighborEntry& nb : q.neighbors) {
        neighbors.push_back({{"index", nb.index}, {"label", nb.label}, {"affinity", nb.affinity}});
      }
      queries.push_back({{"index", q.index},
                         {"label", q.label},
                         {"prediction", optional_json(q.prediction)},
                         {"ssc_label", q.ssc_label},
                         {"profile", q.profile.weights},
                         {"isolated", q.profile.isolated},
                         {"neighbors", neighbors}});
    }
    doc["instances"] = {
        {"layer", s.layer},
        {"epoch", optional_json(s.epoch)},
        {"modularity", s.modularity},
        {"solve", to_json(s.solve)},
        {"summary",
         {{"ssc_label_accuracy", s.summary.ssc_label_accuracy},
          {"network_prediction_accuracy", optional_json(s.summary.network_prediction_accuracy)},
          {"agreement", optional_json(s.summary.agreement)},
          {"isolated_nodes", s.summary.isolated_nodes}}},
        {"queries", queries}};
  }
  return doc;
}

}  // namespace sscnet
