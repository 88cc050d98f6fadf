#pragma once
// Minimal deterministic SVG plotting: fixed 800x500 viewport, byte-identical
// output for identical input.  Only what the CLI needs: line and scatter
// plots of one or more numeric series.

#include <string>
#include <vector>

namespace cuelab {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string kind = "line";  // "line" or "scatter"
  std::vector<PlotSeries> series;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string out_path;
};

/// Render the plot to spec.out_path.  Non-finite points are dropped.
/// Throws ConfigError (invalid spec: no series, length mismatch, unknown
/// kind, no finite data) or std::runtime_error (unwritable path).
void emit_svg(const PlotSpec& spec);

/// The SVG document as a string (same validation, no file IO).
std::string render_svg(const PlotSpec& spec);

}  // namespace cuelab
