#include "gvflab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gvflab {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 170, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#2a9d3c", "#e08a2c", "#3468c8", "#c8443a",
                          "#7d51b4", "#2aa6a0", "#8a6d3b", "#d357a4"};

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

std::string num(double v) { return format_value(v); }

struct Series {
  std::string id;
  std::vector<std::int64_t> steps;
  std::vector<double> mean;
  std::vector<double> err;
};

}  // namespace

std::string render_plot_svg(const std::vector<SummaryRow>& summary, const PlotSpec& spec) {
  std::set<std::string> available;
  std::map<std::string, Series> by_id;
  for (const SummaryRow& r : summary) {
    available.insert(r.metric);
    if (r.metric != spec.metric) continue;
    if (!spec.gvf_ids.empty() &&
        std::find(spec.gvf_ids.begin(), spec.gvf_ids.end(), r.gvf_id) == spec.gvf_ids.end())
      continue;
    Series& s = by_id[r.gvf_id];
    s.id = r.gvf_id;
    s.steps.push_back(r.step);
    s.mean.push_back(r.mean);
    s.err.push_back(r.stderr_);
  }
  if (spec.metric.empty() || by_id.empty()) {
    std::string msg = "no data for metric '" + spec.metric + "'; available metrics:";
    for (const auto& m : available) msg += " " + m;
    throw ConfigError(msg);
  }

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& [id, s] : by_id) {
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      xmin = std::min(xmin, static_cast<double>(s.steps[i]));
      xmax = std::max(xmax, static_cast<double>(s.steps[i]));
      ymin = std::min(ymin, s.mean[i] - s.err[i]);
      ymax = std::max(ymax, s.mean[i] + s.err[i]);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto sx = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return kMarginT + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  const std::string title = spec.title.empty() ? spec.metric : spec.title;
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape_xml(title) << "</text>\n";

  // axes
  svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
      << "\" y2=\"" << kMarginT + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT + plot_h << "\" x2=\""
      << kMarginL + plot_w << "\" y2=\"" << kMarginT + plot_h << "\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    svg << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << kMarginT + plot_h << "\" x2=\""
        << num(sx(xv)) << "\" y2=\"" << kMarginT + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(sx(xv)) << "\" y=\"" << kMarginT + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(xv) << "</text>\n";
    svg << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << kMarginL
        << "\" y2=\"" << num(sy(yv)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << num(sy(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(yv)
        << "</text>\n";
  }

  svg << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">step</text>\n";
  svg << "<text x=\"16\" y=\"" << kMarginT + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 "
      << kMarginT + plot_h / 2 << ")\">" << escape_xml(spec.metric) << "</text>\n";

  int color = 0;
  int legend_y = kMarginT + 10;
  for (const auto& [id, s] : by_id) {
    const std::string stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
    ++color;

    // standard-error band: upper edge forward, lower edge reversed
    bool has_band = false;
    for (double e : s.err)
      if (e > 0.0) { has_band = true; break; }
    if (has_band) {
      svg << "<path d=\"";
      for (std::size_t i = 0; i < s.steps.size(); ++i)
        svg << (i == 0 ? 'M' : 'L') << num(sx(s.steps[i])) << ' ' << num(sy(s.mean[i] + s.err[i]));
      for (std::size_t i = s.steps.size(); i-- > 0;)
        svg << 'L' << num(sx(s.steps[i])) << ' ' << num(sy(s.mean[i] - s.err[i]));
      svg << "Z\" fill=\"" << stroke << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }

    svg << "<path d=\"";
    for (std::size_t i = 0; i < s.steps.size(); ++i)
      svg << (i == 0 ? 'M' : 'L') << num(sx(s.steps[i])) << ' ' << num(sy(s.mean[i]));
    svg << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.6\"/>\n";

    svg << "<line x1=\"" << kMarginL + plot_w + 12 << "\" y1=\"" << legend_y << "\" x2=\""
        << kMarginL + plot_w + 34 << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kMarginL + plot_w + 40 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(id) << "</text>\n";
    legend_y += 18;
  }

  svg << "</svg>\n";
  return svg.str();
}

void write_plot_svg(const std::vector<SummaryRow>& summary, const PlotSpec& spec,
                    const std::filesystem::path& out_file) {
  const std::string svg = render_plot_svg(summary, spec);
  std::ofstream out(out_file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + out_file.string() + "'");
  out << svg;
  if (!out) throw ConfigError("failed writing '" + out_file.string() + "'");
}

}  // namespace gvflab
