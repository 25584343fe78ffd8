// Copyright 2026 The Temporet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "temporet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace temporet {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
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

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377"};

}  // namespace

std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<BarSeries>& series,
                          const std::string& y_label, double y_max_hint) {
  if (categories.empty() || series.empty()) {
    throw std::invalid_argument("bar_chart_svg: empty input");
  }
  for (const auto& s : series) {
    if (s.values.size() != categories.size()) {
      throw std::invalid_argument("bar_chart_svg: series length mismatch");
    }
  }

  double y_max = y_max_hint;
  for (const auto& s : series) {
    for (double v : s.values) y_max = std::max(y_max, v);
  }
  if (y_max <= 0.0) y_max = 1.0;

  const double width = 720.0, height = 420.0;
  const double ml = 60.0, mr = 20.0, mt = 48.0, mb = 72.0;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;
  const double group_w = plot_w / static_cast<double>(categories.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(series.size());

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << " " << fmt(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2) << "\" y=\"24\" font-size=\"16\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape(title) << "</text>\n";

  // y axis with five gridlines
  for (int i = 0; i <= 5; ++i) {
    const double v = y_max * i / 5.0;
    const double y = mt + plot_h * (1.0 - static_cast<double>(i) / 5.0);
    out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(width - mr) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">"
        << fmt(v) << "</text>\n";
  }
  if (!y_label.empty()) {
    out << "<text x=\"14\" y=\"" << fmt(mt + plot_h / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" transform=\"rotate(-90 14 "
        << fmt(mt + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";
  }

  for (std::size_t ci = 0; ci < categories.size(); ++ci) {
    const double gx = ml + group_w * (static_cast<double>(ci) + 0.1);
    for (std::size_t si = 0; si < series.size(); ++si) {
      const double v = series[si].values[ci];
      const double h = plot_h * std::clamp(v / y_max, 0.0, 1.0);
      const double x = gx + bar_w * static_cast<double>(si);
      const std::string color = series[si].color.empty()
                                    ? kPalette[si % 6]
                                    : series[si].color;
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(mt + plot_h - h)
          << "\" width=\"" << fmt(bar_w) << "\" height=\"" << fmt(h)
          << "\" fill=\"" << color << "\"/>\n";
    }
    const double cx = ml + group_w * (static_cast<double>(ci) + 0.5);
    out << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(mt + plot_h + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">"
        << escape(categories[ci]) << "</text>\n";
  }

  // legend along the bottom
  double lx = ml;
  const double ly = height - 24.0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const std::string color =
        series[si].color.empty() ? kPalette[si % 6] : series[si].color;
    out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 10)
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << fmt(lx + 16) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << escape(series[si].name) << "</text>\n";
    lx += 18.0 + 7.0 * static_cast<double>(series[si].name.size()) + 24.0;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace temporet
