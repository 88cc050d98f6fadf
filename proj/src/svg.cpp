#include "cuelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cuelab/montecarlo.hpp"  // ConfigError

namespace cuelab {
namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 780.0, kTop = 40.0, kBottom = 450.0;

const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  if (spec.series.empty())
    throw ConfigError("plot: at least one series is required");
  if (spec.kind != "line" && spec.kind != "scatter")
    throw ConfigError("plot: kind must be 'line' or 'scatter'");
  for (const PlotSeries& s : spec.series)
    if (s.x.size() != s.y.size())
      throw ConfigError("plot: series x/y length mismatch");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  std::size_t finite = 0;
  for (const PlotSeries& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
      ++finite;
    }
  }
  if (finite == 0) throw ConfigError("plot: no finite data points");
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const auto px = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
        "height=\"500\" viewBox=\"0 0 800 500\">\n";
  os << "<rect width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
  if (!spec.title.empty())
    os << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"monospace\" font-size=\"16\">"
       << escape_xml(spec.title) << "</text>\n";
  // Axes box and ticks.
  os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
     << num(kRight - kLeft) << "\" height=\"" << num(kBottom - kTop)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    const double gx = px(fx), gy = py(fy);
    os << "<line x1=\"" << num(gx) << "\" y1=\"" << num(kBottom) << "\" x2=\""
       << num(gx) << "\" y2=\"" << num(kBottom + 5) << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << num(gx) << "\" y=\"" << num(kBottom + 20)
       << "\" text-anchor=\"middle\" font-family=\"monospace\" "
          "font-size=\"11\">"
       << tick_label(fx) << "</text>\n";
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(gy)
       << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(gy)
       << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(gy + 4)
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
       << tick_label(fy) << "</text>\n";
  }
  if (!spec.x_label.empty())
    os << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"485\" "
          "text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
       << escape_xml(spec.x_label) << "</text>\n";
  if (!spec.y_label.empty())
    os << "<text x=\"16\" y=\"" << num((kTop + kBottom) / 2)
       << "\" text-anchor=\"middle\" font-family=\"monospace\" "
          "font-size=\"13\" transform=\"rotate(-90 16 "
       << num((kTop + kBottom) / 2) << ")\">" << escape_xml(spec.y_label)
       << "</text>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const PlotSeries& s = spec.series[si];
    const char* color = series_color(si);
    if (spec.kind == "line") {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (!first) os << ' ';
        os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
        first = false;
      }
      os << "\"/>\n";
    } else {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\""
           << num(py(s.y[i])) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      const double ly = kTop + 16.0 + 16.0 * static_cast<double>(si);
      os << "<line x1=\"" << num(kRight - 150) << "\" y1=\"" << num(ly - 4)
         << "\" x2=\"" << num(kRight - 130) << "\" y2=\"" << num(ly - 4)
         << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << num(kRight - 125) << "\" y=\"" << num(ly)
         << "\" font-family=\"monospace\" font-size=\"12\">"
         << escape_xml(s.label) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void emit_svg(const PlotSpec& spec) {
  const std::string doc = render_svg(spec);
  std::ofstream out(spec.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot open " + spec.out_path);
  out << doc;
  out.flush();
  if (!out) throw std::runtime_error("plot: write failed for " + spec.out_path);
}

}  // namespace cuelab
