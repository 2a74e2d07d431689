#pragma once

// Minimal SVG line charts for sweep results: multiple series, optional
// symmetric error bars, a legend, and nothing that needs a renderer beyond a
// browser. Output is a standalone <svg> document.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "manetmc/sweep.hpp"

namespace manetmc {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // empty, or one half-width per point
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
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

}  // namespace detail

// Render the series into one SVG document. Throws when there is nothing to
// draw or a series is malformed.
inline std::string render_svg_chart(const std::string& title,
                                    const std::string& x_label,
                                    const std::string& y_label,
                                    const std::vector<PlotSeries>& series,
                                    int width = 720, int height = 480) {
  if (series.empty()) throw std::invalid_argument("render_svg_chart: no series");
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  bool first = true;
  for (const PlotSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw std::invalid_argument("render_svg_chart: bad series '" + s.label + "'");
    if (!s.yerr.empty() && s.yerr.size() != s.y.size())
      throw std::invalid_argument("render_svg_chart: bad error bars '" + s.label + "'");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = s.yerr.empty() ? 0.0 : s.yerr[i];
      if (first) {
        x_min = x_max = s.x[i];
        y_min = s.y[i] - e;
        y_max = s.y[i] + e;
        first = false;
      } else {
        x_min = std::min(x_min, s.x[i]);
        x_max = std::max(x_max, s.x[i]);
        y_min = std::min(y_min, s.y[i] - e);
        y_max = std::max(y_max, s.y[i] + e);
      }
    }
  }
  if (x_max == x_min) { x_min -= 1.0; x_max += 1.0; }
  if (y_max == y_min) { y_min -= 1.0; y_max += 1.0; }
  const double pad_y = 0.05 * (y_max - y_min);
  y_min -= pad_y;
  y_max += pad_y;

  const double ml = 64, mr = 16, mt = 40, mb = 48;  // margins
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr int kPaletteSize = 6;

  using detail::svg_num;
  using detail::xml_escape;
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + svg_num(width / 2.0) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + xml_escape(title) + "</text>\n";

  // Grid and tick labels, five divisions per axis.
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double fy = y_min + (y_max - y_min) * i / 5.0;
    svg += "<line x1=\"" + svg_num(px(fx)) + "\" y1=\"" + svg_num(mt) +
           "\" x2=\"" + svg_num(px(fx)) + "\" y2=\"" + svg_num(mt + ph) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<line x1=\"" + svg_num(ml) + "\" y1=\"" + svg_num(py(fy)) +
           "\" x2=\"" + svg_num(ml + pw) + "\" y2=\"" + svg_num(py(fy)) +
           "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + svg_num(px(fx)) + "\" y=\"" + svg_num(mt + ph + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + svg_num(fx) + "</text>\n";
    svg += "<text x=\"" + svg_num(ml - 6) + "\" y=\"" + svg_num(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + svg_num(fy) + "</text>\n";
  }
  svg += "<rect x=\"" + svg_num(ml) + "\" y=\"" + svg_num(mt) + "\" width=\"" +
         svg_num(pw) + "\" height=\"" + svg_num(ph) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg += "<text x=\"" + svg_num(ml + pw / 2) + "\" y=\"" +
         svg_num(height - 10.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + svg_num(mt + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " + svg_num(mt + ph / 2) + ")\">" +
         xml_escape(y_label) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    if (!s.yerr.empty()) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.yerr[i] <= 0.0) continue;
        const double cx = px(s.x[i]);
        const double y0 = py(s.y[i] - s.yerr[i]);
        const double y1 = py(s.y[i] + s.yerr[i]);
        svg += "<line x1=\"" + svg_num(cx) + "\" y1=\"" + svg_num(y0) +
               "\" x2=\"" + svg_num(cx) + "\" y2=\"" + svg_num(y1) +
               "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + svg_num(cx - 3) + "\" y1=\"" + svg_num(y0) +
               "\" x2=\"" + svg_num(cx + 3) + "\" y2=\"" + svg_num(y0) +
               "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + svg_num(cx - 3) + "\" y1=\"" + svg_num(y1) +
               "\" x2=\"" + svg_num(cx + 3) + "\" y2=\"" + svg_num(y1) +
               "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
    }
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!pts.empty()) pts += ' ';
      pts += svg_num(px(s.x[i])) + "," + svg_num(py(s.y[i]));
    }
    svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg += "<circle cx=\"" + svg_num(px(s.x[i])) + "\" cy=\"" +
             svg_num(py(s.y[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    // Legend entry.
    const double ly = mt + 14.0 + 16.0 * si;
    svg += "<line x1=\"" + svg_num(ml + pw - 150) + "\" y1=\"" + svg_num(ly) +
           "\" x2=\"" + svg_num(ml + pw - 130) + "\" y2=\"" + svg_num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + svg_num(ml + pw - 124) + "\" y=\"" + svg_num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// Convenience: chart a sweep's mean reliability with one-sigma error bars.
// Only works for sweeps over numeric parameter values.
inline std::string sweep_chart(const SweepResult& sweep) {
  if (sweep.points.empty())
    throw std::invalid_argument("sweep_chart: empty sweep");
  PlotSeries s;
  s.label = "mean reliability";
  for (const SweepPoint& p : sweep.points) {
    char* end = nullptr;
    const double x = std::strtod(p.value.c_str(), &end);
    if (end == p.value.c_str() || *end != '\0')
      throw std::invalid_argument("sweep_chart: non-numeric sweep value '" +
                                  p.value + "'");
    s.x.push_back(x);
    s.y.push_back(p.report.mean_lambda);
    s.yerr.push_back(p.report.std_lambda);
  }
  return render_svg_chart("reliability vs " + sweep.param, sweep.param,
                          "reliability", {s});
}

}  // namespace manetmc
