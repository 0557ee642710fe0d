#include "sscnet/output.hpp"

#include <array>
#include <charconv>
#include <string>

#include "sscnet/error.hpp"
#include "sscnet/heatmap.hpp"
#include "sscnet/matrix_io.hpp"

namespace sscnet {

namespace {

std::string number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string dynamics_csv(const AnalysisReport& report) {
  std::string out = "layer,epoch,modularity,ssc_cka_to_final,linear_cka_to_final\n";
  for (const LayerCurve& c : report.dynamics) {
    for (std::size_t e = 0; e < c.epochs.size(); ++e) {
      out += c.layer + "," + std::to_string(c.epochs[e]) + "," + number(c.modularity[e]) + "," +
             number(c.ssc_cka_to_final[e]) + "," + number(c.linear_cka_to_final[e]) + "\n";
    }
  }
  return out;
}

}  // namespace

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_file_atomic(path, doc.dump(2) + "\n");
}

void write_report(const AnalysisReport& report, const std::filesystem::path& dir, bool heatmaps) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory '" + dir.string() + "'");

  write_json(dir / (report.suite + ".json"), to_json(report));
  if (!report.dynamics.empty()) {
    write_file_atomic(dir / "dynamics_curves.csv", dynamics_csv(report));
  }
  if (report.pairwise) {
    const PairwiseSection& p = *report.pairwise;
    if (heatmaps) {
      render_heatmap(p.ssc_cka, dir / "ssc_cka.svg", p.layers);
      render_heatmap(p.linear_cka, dir / "linear_cka.svg", p.layers);
    } else {
      save_matrix(dir / "ssc_cka.csv", p.ssc_cka);
      save_matrix(dir / "linear_cka.csv", p.linear_cka);
    }
  }
}

}  // namespace sscnet
