#include "hadamard/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace hadamard {
namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;
constexpr double kFloor = 1e-12;  // log-plot floor for zero distances

const char* series_color(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::kInductive: return "#1f77b4";
    case EstimatorTag::kHansen: return "#d62728";
    case EstimatorTag::kResampled: return "#2ca02c";
    case EstimatorTag::kLimPalfia: return "#9467bd";
    case EstimatorTag::kEsSahib: return "#ff7f0e";
  }
  return "#000000";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::vector<std::string> write_svg_charts(const RunResult& result, const std::string& dir) {
  // (metric) -> estimator -> n -> (sum, count) over replications
  std::map<Metric, std::map<EstimatorTag, std::map<std::int64_t, std::pair<double, int>>>>
      charts;
  for (const RunRow& row : result.rows) {
    auto& cell = charts[row.metric][row.estimator][row.n];
    cell.first += row.value;
    cell.second += 1;
  }

  std::vector<std::string> written;
  for (const auto& [metric, series] : charts) {
    double n_min = 1.0, n_max = 1.0, v_min = kFloor, v_max = kFloor;
    bool first = true;
    for (const auto& [tag, curve] : series) {
      for (const auto& [n, cell] : curve) {
        const double v = std::max(kFloor, cell.first / cell.second);
        if (first) {
          n_min = n_max = static_cast<double>(n);
          v_min = v_max = v;
          first = false;
        } else {
          n_min = std::min(n_min, static_cast<double>(n));
          n_max = std::max(n_max, static_cast<double>(n));
          v_min = std::min(v_min, v);
          v_max = std::max(v_max, v);
        }
      }
    }
    if (first) continue;
    const double lx0 = std::log10(n_min);
    const double lx1 = std::max(lx0 + 1e-9, std::log10(n_max));
    const double ly0 = std::log10(v_min) - 0.05;
    const double ly1 = std::max(ly0 + 1e-9, std::log10(v_max) + 0.05);
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double n) {
      return kMarginLeft + (std::log10(n) - lx0) / (lx1 - lx0) * plot_w;
    };
    auto sy = [&](double v) {
      return kMarginTop + (ly1 - std::log10(std::max(kFloor, v))) / (ly1 - ly0) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string title = std::string(experiment_name(result.config_echo.experiment)) +
                              ": distance to the limit (" + metric_name(metric) + ")";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
        << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"black\"/>\n";

    for (int e = static_cast<int>(std::floor(lx0)); e <= static_cast<int>(std::ceil(lx1)); ++e) {
      const double n = std::pow(10.0, e);
      if (n < n_min * 0.999 || n > n_max * 1.001) continue;
      const double x = sx(n);
      svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
          << fmt(x) << "\" y2=\"" << kHeight - kMarginBottom + 6 << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << fmt(x) << "\" y=\"" << kHeight - kMarginBottom + 22
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" << e
          << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(ly0)); e <= static_cast<int>(std::ceil(ly1)); ++e) {
      if (e < ly0 || e > ly1) continue;
      const double y = kMarginTop + (ly1 - e) / (ly1 - ly0) * plot_h;
      svg << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kMarginLeft
          << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << fmt(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" << e
          << "</text>\n";
    }
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n "
        << "(log scale)</text>\n";

    double legend_y = kMarginTop + 10.0;
    for (const auto& [tag, curve] : series) {
      svg << "<polyline fill=\"none\" stroke=\"" << series_color(tag)
          << "\" stroke-width=\"1.6\" points=\"";
      for (const auto& [n, cell] : curve) {
        svg << fmt(sx(static_cast<double>(n))) << "," << fmt(sy(cell.first / cell.second)) << " ";
      }
      svg << "\"/>\n";
      svg << "<line x1=\"" << kWidth - kMarginRight - 150 << "\" y1=\"" << fmt(legend_y)
          << "\" x2=\"" << kWidth - kMarginRight - 125 << "\" y2=\"" << fmt(legend_y)
          << "\" stroke=\"" << series_color(tag) << "\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << kWidth - kMarginRight - 118 << "\" y=\"" << fmt(legend_y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << estimator_name(tag)
          << "</text>\n";
      legend_y += 18.0;
    }
    svg << "</svg>\n";

    const std::string path = dir + "/" + experiment_name(result.config_echo.experiment) + "-" +
                             metric_name(metric) + ".svg";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << svg.str();
    if (!out) throw IoError("write to '" + path + "' failed");
    written.push_back(path);
  }
  return written;
}

}  // namespace hadamard
