#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscnet/graph_metrics.hpp"
#include "sscnet/manifest.hpp"
#include "sscnet/ssc_solver.hpp"

namespace sscnet {

// Manifest-driven analysis suites. Everything here composes the solver,
// similarity and graph-metric operations; no numerics of its own.

struct AnalysisOptions {
  SscConfig ssc;
  double threshold = 0.0;  // affinities below this are zeroed (exploration only)
};

struct SolveSummary {
  int iterations = 0;
  bool converged = false;
  double final_mu = 0.0;
  double objective = 0.0;
};

struct LayerGraph {
  AffinityMatrix affinity;
  SolveSummary solve;
};

/// SSC solve + affinity (+ optional threshold) for one activation matrix.
LayerGraph layer_graph(const ActivationMatrix& x, const AnalysisOptions& options);

struct LayerCurve {
  std::string layer;
  std::vector<int> epochs;
  std::vector<double> modularity;
  std::vector<double> ssc_cka_to_final;
  std::vector<double> linear_cka_to_final;
  std::vector<SolveSummary> solves;
};

struct PairwiseSection {
  std::vector<std::string> layers;
  std::vector<std::optional<int>> epochs;
  Matrix ssc_cka;
  Matrix linear_cka;
  std::vector<double> modularity;  // empty when the manifest has no labels
  std::vector<SolveSummary> solves;
};

struct NeighborEntry {
  Index index = 0;
  int label = 0;
  double affinity = 0.0;
};

struct InstanceQuery {
  Index index = 0;
  int label = 0;
  std::optional<int> prediction;
  int ssc_label = 0;
  ClassProfile profile;
  std::vector<NeighborEntry> neighbors;
};

/// Accuracy of SSC labels and network predictions against ground truth, and
/// their one-to-one agreement.
struct LabelSummary {
  double ssc_label_accuracy = 0.0;
  std::optional<double> network_prediction_accuracy;
  std::optional<double> agreement;
  std::size_t isolated_nodes = 0;
};

struct InstanceSection {
  std::string layer;
  std::optional<int> epoch;
  double modularity = 0.0;
  LabelSummary summary;
  std::vector<InstanceQuery> queries;
  SolveSummary solve;
};

struct AnalysisReport {
  std::string suite;
  AnalysisOptions options;
  std::vector<LayerCurve> dynamics;
  std::optional<PairwiseSection> pairwise;
  std::optional<InstanceSection> instances;
};

/// Per layer and epoch: modularity of the SSC graph, SSC-CKA and Linear-CKA
/// against the same layer's final epoch. Every layer needs >= 2 epochs.
AnalysisReport run_training_dynamics(const LayerManifest& manifest, const AnalysisOptions& options);

/// SSC-CKA and Linear-CKA between every pair of layers, in manifest order.
/// Uses `epoch` for each layer, or each layer's latest record when unset.
AnalysisReport run_pairwise_architecture(const LayerManifest& manifest,
                                         const AnalysisOptions& options,
                                         std::optional<int> epoch = std::nullopt);

/// Class profiles and top-k neighbours for the query nodes plus the label
/// summary for one layer. An empty layer name selects the last layer.
AnalysisReport run_instance_analysis(const LayerManifest& manifest, const std::string& layer,
                                     std::optional<int> epoch, std::span<const Index> queries,
                                     Index k, const AnalysisOptions& options);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const SscConfig& cfg);
nlohmann::json to_json(const SolveReport& report);

}  // namespace sscnet
