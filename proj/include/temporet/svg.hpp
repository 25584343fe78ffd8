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

#ifndef TEMPORET_SVG_HPP
#define TEMPORET_SVG_HPP

#include <string>
#include <vector>

namespace temporet {

struct BarSeries {
  std::string name;
  std::vector<double> values;  // one value per category
  std::string color = "#4477aa";
};

/// Grouped bar chart as a standalone SVG document. Deterministic output:
/// same inputs give the same bytes.
std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<BarSeries>& series,
                          const std::string& y_label = "",
                          double y_max_hint = 0.0);

}  // namespace temporet

#endif  // TEMPORET_SVG_HPP
