#pragma once

#include <filesystem>

#include <json.hpp>

#include "sscnet/analysis.hpp"

namespace sscnet {

/// Two-space indented JSON with a trailing newline, written atomically.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Writes `<dir>/<suite>.json` plus the suite's CSV sidecars and, when
/// `heatmaps` is set, SVG heatmaps of every pairwise matrix.
void write_report(const AnalysisReport& report, const std::filesystem::path& dir, bool heatmaps);

}  // namespace sscnet
