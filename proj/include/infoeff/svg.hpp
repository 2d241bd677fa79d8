// Copyright 2026 The infoeff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal single-series line chart. Output depends only on the input, so
// charts are byte-reproducible.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "infoeff/coin_game.hpp"

namespace infoeff::svg {

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

namespace detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline void write_line_chart(std::ostream& out, const ChartSpec& chart, std::span<const coin::SweepRow> rows) {
  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - chart.x_min) / (chart.x_max - chart.x_min) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - chart.y_min) / (chart.y_max - chart.y_min) * plot_h; };
  using detail::fixed;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\""
      << fixed(kHeight, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << " " << fixed(kHeight, 0) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << detail::escape(chart.title) << "</text>\n";

  // Axes and ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(kLeft + plot_w)
      << "\" y2=\"" << fixed(kTop + plot_h) << "\"/>\n";
  out << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
      << fixed(kTop + plot_h) << "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double tx = chart.x_min + (chart.x_max - chart.x_min) * i / 5.0;
    const double ty = chart.y_min + (chart.y_max - chart.y_min) * i / 5.0;
    out << "<line x1=\"" << fixed(px(tx)) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(px(tx))
        << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\"/>\n";
    out << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(py(ty)) << "\" x2=\"" << fixed(kLeft)
        << "\" y2=\"" << fixed(py(ty)) << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double tx = chart.x_min + (chart.x_max - chart.x_min) * i / 5.0;
    const double ty = chart.y_min + (chart.y_max - chart.y_min) * i / 5.0;
    out << "<text x=\"" << fixed(px(tx)) << "\" y=\"" << fixed(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\">" << fixed(tx, 1) << "</text>\n";
    out << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(ty) + 4) << "\" text-anchor=\"end\">"
        << fixed(ty, 1) << "</text>\n";
  }
  out << "</g>\n";
  out << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << detail::escape(chart.x_label)
      << "</text>\n";
  out << "<text x=\"20\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\" transform=\"rotate(-90 20 " << fixed(kTop + plot_h / 2) << ")\">"
      << detail::escape(chart.y_label) << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double y = std::clamp(rows[i].value, chart.y_min, chart.y_max);
    out << (i ? " " : "") << fixed(px(rows[i].param)) << "," << fixed(py(y));
  }
  out << "\"/>\n</svg>\n";
}

}  // namespace infoeff::svg
