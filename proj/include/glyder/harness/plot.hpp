// Copyright 2026 The GLyDER Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace glyder {

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "step";
  std::string y_label;
  bool log_y = false;
  int width = 960;
  int height = 560;
};

namespace detail {

inline std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Tick spacing of the form {1,2,5} * 10^k giving roughly `want` intervals.
inline double nice_tick(double range, int want) {
  const double raw = range / std::max(want, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  return step * mag;
}

}  // namespace detail

// Renders one chart with a polyline per series.  With log_y, points at or
// below zero are dropped (and a series of only such points disappears).
inline std::string render_plot_svg(const std::vector<PlotSeries>& series,
                                   const PlotOptions& opt) {
  if (series.empty()) throw std::invalid_argument("render_plot: no series");
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#17becf", "#8c564b", "#000000"};
  constexpr int kNumColors = 8;

  const double ml = 72, mr = 24, mt = 46, mb = 56;
  const double pw = opt.width - ml - mr;
  const double ph = opt.height - mt - mb;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
  for (const PlotSeries& s : series) {
    if (s.xs.size() != s.ys.size())
      throw std::invalid_argument("render_plot: series size mismatch");
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      const double y = s.ys[i];
      if (!std::isfinite(s.xs[i]) || !std::isfinite(y)) continue;
      if (opt.log_y && y <= 0.0) continue;
      x_lo = std::min(x_lo, s.xs[i]);
      x_hi = std::max(x_hi, s.xs[i]);
      const double yv = opt.log_y ? std::log10(y) : y;
      y_lo = std::min(y_lo, yv);
      y_hi = std::max(y_hi, yv);
    }
  }
  if (!std::isfinite(x_lo) || !std::isfinite(y_lo))
    throw std::invalid_argument("render_plot: no drawable points");
  if (x_hi == x_lo) { x_hi += 1.0; x_lo -= 1.0; }
  if (y_hi == y_lo) { y_hi += 1.0; y_lo -= 1.0; }

  const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  const auto py = [&](double yv) { return mt + (1.0 - (yv - y_lo) / (y_hi - y_lo)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << " "
      << opt.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"Helvetica,Arial,sans-serif\" font-size=\"12\">\n";

  // Gridlines and tick labels.
  const double xt = detail::nice_tick(x_hi - x_lo, 6);
  for (double x = std::ceil(x_lo / xt) * xt; x <= x_hi + 1e-9 * xt; x += xt) {
    svg << "<line x1=\"" << detail::num(px(x)) << "\" y1=\"" << mt << "\" x2=\""
        << detail::num(px(x)) << "\" y2=\"" << mt + ph
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << detail::num(px(x)) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\">" << detail::num(x) << "</text>\n";
  }
  if (opt.log_y) {
    for (double e = std::ceil(y_lo); e <= std::floor(y_hi) + 1e-9; e += 1.0) {
      svg << "<line x1=\"" << ml << "\" y1=\"" << detail::num(py(e)) << "\" x2=\""
          << ml + pw << "\" y2=\"" << detail::num(py(e))
          << "\" stroke=\"#dddddd\"/>\n";
      svg << "<text x=\"" << ml - 8 << "\" y=\"" << detail::num(py(e) + 4)
          << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
    }
  } else {
    const double yt = detail::nice_tick(y_hi - y_lo, 5);
    for (double y = std::ceil(y_lo / yt) * yt; y <= y_hi + 1e-9 * yt; y += yt) {
      svg << "<line x1=\"" << ml << "\" y1=\"" << detail::num(py(y)) << "\" x2=\""
          << ml + pw << "\" y2=\"" << detail::num(py(y))
          << "\" stroke=\"#dddddd\"/>\n";
      svg << "<text x=\"" << ml - 8 << "\" y=\"" << detail::num(py(y) + 4)
          << "\" text-anchor=\"end\">" << detail::num(y) << "</text>\n";
    }
  }

  // Frame and axis labels.
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  if (!opt.title.empty())
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"15\" font-weight=\"bold\">" << detail::svg_escape(opt.title)
        << "</text>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 14
      << "\" text-anchor=\"middle\">" << detail::svg_escape(opt.x_label)
      << "</text>\n";
  if (!opt.y_label.empty())
    svg << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">" << detail::svg_escape(opt.y_label) << "</text>\n";

  // Series.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % kNumColors];
    std::ostringstream pts;
    bool open = false;
    std::string path;
    for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
      const double x = series[s].xs[i];
      const double y = series[s].ys[i];
      const bool ok = std::isfinite(x) && std::isfinite(y) && (!opt.log_y || y > 0.0);
      if (!ok) {
        if (open) {
          path += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                  "\" stroke-width=\"1.6\" points=\"" + pts.str() + "\"/>\n";
          pts.str("");
          open = false;
        }
        continue;
      }
      const double yv = opt.log_y ? std::log10(y) : y;
      pts << detail::num(px(x)) << ',' << detail::num(py(yv)) << ' ';
      open = true;
    }
    if (open)
      path += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
              "\" stroke-width=\"1.6\" points=\"" + pts.str() + "\"/>\n";
    svg << path;

    // Legend entry.
    const double ly = mt + 16 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw - 122 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw - 116 << "\" y=\"" << ly + 4 << "\">"
        << detail::svg_escape(series[s].label) << "</text>\n";
  }

  svg << "</g>\n</svg>\n";
  return svg.str();
}

inline void render_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << render_plot_svg(series, opt);
}

}  // namespace glyder
