#include "sscnet/manifest.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sscnet/error.hpp"
#include "sscnet/matrix_io.hpp"

namespace sscnet {

namespace {

[[noreturn]] void manifest_error(const std::string& message) {
  throw Error(ErrorCode::parse, "manifest: " + message);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string relative_string(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (base.empty()) return p.generic_string();
  const std::filesystem::path rel = p.lexically_relative(base);
  return rel.empty() ? p.generic_string() : rel.generic_string();
}

std::string describe(const LayerRecord& r) {
  return "'" + r.layer_name + "'" + (r.epoch ? " epoch " + std::to_string(*r.epoch) : "");
}

}  // namespace

LayerManifest parse_manifest(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) manifest_error("top level must be a JSON object");
  if (!doc.contains("records") || !doc["records"].is_array()) {
    manifest_error("missing 'records' array");
  }
  LayerManifest manifest;
  std::set<std::pair<std::string, std::optional<int>>> seen;
  for (const auto& item : doc["records"]) {
    if (!item.is_object()) manifest_error("each record must be an object");
    if (!item.contains("layer_name") || !item["layer_name"].is_string()) {
      manifest_error("record without string 'layer_name'");
    }
    if (!item.contains("matrix_path") || !item["matrix_path"].is_string()) {
      manifest_error("record without string 'matrix_path'");
    }
    LayerRecord r;
    r.layer_name = item["layer_name"].get<std::string>();
    r.matrix_path = resolve(base_dir, item["matrix_path"].get<std::string>());
    if (item.contains("epoch") && !item["epoch"].is_null()) {
      if (!item["epoch"].is_number_integer()) manifest_error("'epoch' must be an integer");
      r.epoch = item["epoch"].get<int>();
    }
    if (item.contains("sample_axis")) {
      const std::string axis = item["sample_axis"].get<std::string>();
      if (axis == "columns") {
        r.sample_axis = SampleAxis::columns;
      } else if (axis == "rows") {
        r.sample_axis = SampleAxis::rows;
      } else {
        manifest_error("'sample_axis' must be \"columns\" or \"rows\", got \"" + axis + "\"");
      }
    }
    if (!seen.emplace(r.layer_name, r.epoch).second) {
      manifest_error("duplicate record for layer " + describe(r));
    }
    manifest.records.push_back(std::move(r));
  }
  if (doc.contains("labels_path") && !doc["labels_path"].is_null()) {
    manifest.labels_path = resolve(base_dir, doc["labels_path"].get<std::string>());
  }
  if (doc.contains("predictions_path") && !doc["predictions_path"].is_null()) {
    manifest.predictions_path = resolve(base_dir, doc["predictions_path"].get<std::string>());
  }
  return manifest;
}

LayerManifest load_manifest(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": invalid JSON: " + e.what());
  }
  return parse_manifest(doc, path.parent_path());
}

nlohmann::json manifest_to_json(const LayerManifest& manifest,
                                const std::filesystem::path& base_dir) {
  nlohmann::json records = nlohmann::json::array();
  for (const LayerRecord& r : manifest.records) {
    nlohmann::json item;
    item["layer_name"] = r.layer_name;
    item["epoch"] = r.epoch ? nlohmann::json(*r.epoch) : nlohmann::json(nullptr);
    item["matrix_path"] = relative_string(r.matrix_path, base_dir);
    item["sample_axis"] = r.sample_axis == SampleAxis::columns ? "columns" : "rows";
    records.push_back(std::move(item));
  }
  nlohmann::json doc;
  doc["records"] = std::move(records);
  doc["labels_path"] = manifest.labels_path
                           ? nlohmann::json(relative_string(*manifest.labels_path, base_dir))
                           : nlohmann::json(nullptr);
  doc["predictions_path"] =
      manifest.predictions_path
          ? nlohmann::json(relative_string(*manifest.predictions_path, base_dir))
          : nlohmann::json(nullptr);
  return doc;
}

ActivationMatrix load_record(const LayerRecord& record) {
  if (record.sample_axis == SampleAxis::columns) return load_matrix(record.matrix_path);
  Matrix m = read_matrix(record.matrix_path);
  return ActivationMatrix(m.transpose());
}

std::vector<std::string> layer_order(const LayerManifest& manifest) {
  std::vector<std::string> out;
  for (const LayerRecord& r : manifest.records) {
    if (std::find(out.begin(), out.end(), r.layer_name) == out.end()) out.push_back(r.layer_name);
  }
  return out;
}

std::vector<LayerRecord> layer_records(const LayerManifest& manifest, const std::string& layer) {
  std::vector<LayerRecord> out;
  for (const LayerRecord& r : manifest.records) {
    if (r.layer_name == layer) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const LayerRecord& a, const LayerRecord& b) {
    return a.epoch.value_or(-1) < b.epoch.value_or(-1);
  });
  return out;
}

LayerRecord select_record(const LayerManifest& manifest, const std::string& layer,
                          std::optional<int> epoch) {
  const std::vector<LayerRecord> records = layer_records(manifest, layer);
  if (records.empty()) {
    throw Error(ErrorCode::invalid_input, "manifest has no layer named '" + layer + "'");
  }
  if (!epoch) return records.back();
  for (const LayerRecord& r : records) {
    if (r.epoch == epoch) return r;
  }
  throw Error(ErrorCode::invalid_input,
              "layer '" + layer + "' has no record for epoch " + std::to_string(*epoch));
}

}  // namespace sscnet
