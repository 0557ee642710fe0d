#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscnet/types.hpp"

namespace sscnet {

/// Orientation of a stored activation file. `columns` means d x N (one
/// column per sample); `rows` means N x d and is transposed on load.
enum class SampleAxis { columns, rows };

struct LayerRecord {
  std::string layer_name;
  std::optional<int> epoch;
  std::filesystem::path matrix_path;  // resolved against the manifest directory
  SampleAxis sample_axis = SampleAxis::columns;
};

/// JSON document:
///   { "records": [ { "layer_name": "...", "epoch": 3, "matrix_path": "a.npy",
///                    "sample_axis": "columns" }, ... ],
///     "labels_path": "labels.txt", "predictions_path": "predictions.txt" }
/// `epoch`, `sample_axis`, `labels_path` and `predictions_path` are optional.
struct LayerManifest {
  std::vector<LayerRecord> records;
  std::optional<std::filesystem::path> labels_path;
  std::optional<std::filesystem::path> predictions_path;
};

/// Parses and validates: (layer_name, epoch) pairs are unique. Relative paths
/// are resolved against base_dir.
LayerManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir);
LayerManifest load_manifest(const std::filesystem::path& path);

/// Serializes with paths written relative to base_dir when possible.
nlohmann::json manifest_to_json(const LayerManifest& manifest,
                                const std::filesystem::path& base_dir);

/// Loads the record's matrix as d x N.
ActivationMatrix load_record(const LayerRecord& record);

/// Distinct layer names in order of first appearance.
std::vector<std::string> layer_order(const LayerManifest& manifest);

/// Records of one layer sorted by epoch (records without an epoch first).
std::vector<LayerRecord> layer_records(const LayerManifest& manifest, const std::string& layer);

/// The record of `layer` at `epoch`, or at its latest epoch when unset.
LayerRecord select_record(const LayerManifest& manifest, const std::string& layer,
                          std::optional<int> epoch);

}  // namespace sscnet
