#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sscnet/types.hpp"

namespace sscnet {

/// SVG heatmap of a matrix on a fixed [0, 1] colour scale (values are clamped
/// for display only). Optional axis labels name rows/columns.
std::string heatmap_svg(const Matrix& m, const std::vector<std::string>& labels = {});

/// Writes `path` (SVG) and a sidecar `<stem>.csv` with the exact values.
/// Both writes are atomic.
void render_heatmap(const Matrix& m, const std::filesystem::path& path,
                    const std::vector<std::string>& labels = {});

}  // namespace sscnet
