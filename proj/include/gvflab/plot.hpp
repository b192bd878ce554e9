#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gvflab/harness.hpp"

namespace gvflab {

struct PlotSpec {
  std::string metric;                // required; must exist in the summary
  std::vector<std::string> gvf_ids;  // empty = every id carrying the metric
  std::string title;                 // defaults to the metric name
};

/// Render one metric of a summary as an SVG line chart with shaded
/// standard-error bands, one series per gvf id.
std::string render_plot_svg(const std::vector<SummaryRow>& summary, const PlotSpec& spec);

void write_plot_svg(const std::vector<SummaryRow>& summary, const PlotSpec& spec,
                    const std::filesystem::path& out_file);

}  // namespace gvflab
