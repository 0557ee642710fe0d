#include "sscnet/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "sscnet/error.hpp"
#include "sscnet/matrix_io.hpp"

namespace sscnet {

namespace {

constexpr int kCell = 24;
constexpr int kMargin = 8;

// Linear ramp from white (0) to dark blue (1).
std::string colour(double v) {
  const double t = std::clamp(v, 0.0, 1.0);
  constexpr std::array<double, 3> lo{255.0, 255.0, 255.0};
  constexpr std::array<double, 3> hi{8.0, 48.0, 107.0};
  std::array<int, 3> rgb{};
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(lo[c] + t * (hi[c] - lo[c])));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string heatmap_svg(const Matrix& m, const std::vector<std::string>& labels) {
  if (!m.allFinite()) throw Error(ErrorCode::invalid_input, "heatmap: non-finite entry");
  const bool labelled = labels.size() == static_cast<std::size_t>(m.rows()) &&
                        labels.size() == static_cast<std::size_t>(m.cols());
  const int gutter = labelled ? 96 : 0;
  const int width = gutter + kMargin * 2 + static_cast<int>(m.cols()) * kCell;
  const int height = gutter + kMargin * 2 + static_cast<int>(m.rows()) * kCell;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const int x = gutter + kMargin + static_cast<int>(j) * kCell;
      const int y = gutter + kMargin + static_cast<int>(i) * kCell;
      svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
             std::to_string(kCell) + "\" height=\"" + std::to_string(kCell) + "\" fill=\"" +
             colour(m(i, j)) + "\"/>\n";
    }
  }
  if (labelled) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int offset = gutter + kMargin + static_cast<int>(i) * kCell + kCell / 2;
      svg += "<text x=\"" + std::to_string(gutter) + "\" y=\"" + std::to_string(offset) +
             "\" font-size=\"10\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
             escape(labels[i]) + "</text>\n";
      svg += "<text transform=\"translate(" + std::to_string(offset) + "," +
             std::to_string(gutter) + ") rotate(-90)\" font-size=\"10\" "
             "dominant-baseline=\"middle\">" + escape(labels[i]) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void render_heatmap(const Matrix& m, const std::filesystem::path& path,
                    const std::vector<std::string>& labels) {
  const std::string svg = heatmap_svg(m, labels);
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".csv");
  write_file_atomic(path, svg);
  write_file_atomic(sidecar, encode_csv(m));
}

}  // namespace sscnet
