// Copyright 2026 The qnlp-finance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plot.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

namespace qnlp::cli {

namespace {

constexpr double kPanelW = 360, kPanelH = 240, kMargin = 48, kGap = 40;

std::string fmt(const char* pattern, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

struct Series {
  const char* label;
  const char* color;
  std::function<double(const train::EpochRecord&)> value;
};

void panel(std::ostringstream& out, std::span<const train::EpochRecord> records, double x0,
           const char* title, const std::vector<Series>& series, double lo, double hi) {
  const double y0 = kMargin;
  out << "<g>\n<rect x='" << x0 << "' y='" << y0 << "' width='" << kPanelW << "' height='" << kPanelH
      << "' fill='none' stroke='#444'/>\n";
  out << "<text x='" << x0 + kPanelW / 2 << "' y='" << y0 - 10 << "' text-anchor='middle'>" << title
      << "</text>\n";
  const double n = static_cast<double>(std::max<std::size_t>(records.size(), 2) - 1);
  auto px = [&](std::size_t k) { return x0 + kPanelW * static_cast<double>(k) / n; };
  auto py = [&](double v) { return y0 + kPanelH * (1.0 - (v - lo) / (hi - lo)); };
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    out << "<text x='" << x0 - 6 << "' y='" << py(v) + 4 << "' text-anchor='end' font-size='10'>"
        << fmt("%.2f", v) << "</text>\n";
  }
  out << "<text x='" << x0 + kPanelW / 2 << "' y='" << y0 + kPanelH + 30
      << "' text-anchor='middle' font-size='11'>epoch (1.." << records.size() << ")</text>\n";
  double legend_y = y0 + 14;
  for (const Series& s : series) {
    out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
    for (std::size_t k = 0; k < records.size(); ++k) {
      out << fmt("%.2f", px(k)) << ',' << fmt("%.2f", py(s.value(records[k]))) << ' ';
    }
    out << "'/>\n";
    out << "<text x='" << x0 + kPanelW - 8 << "' y='" << legend_y << "' text-anchor='end' font-size='11' fill='"
        << s.color << "'>" << s.label << "</text>\n";
    legend_y += 14;
  }
  out << "</g>\n";
}

}  // namespace

std::string curve_svg(std::span<const train::EpochRecord> records, const std::string& title) {
  double max_loss = 1e-9;
  for (const auto& r : records) max_loss = std::max({max_loss, r.train_loss, r.val_loss});
  const double width = 2 * kPanelW + 2 * kMargin + kGap;
  const double height = kPanelH + 2 * kMargin + 20;
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "' font-family='sans-serif' font-size='12'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='18' text-anchor='middle' font-weight='bold'>" << title
      << "</text>\n";
  panel(out, records, kMargin, "loss",
        {{"train", "#1f77b4", [](const auto& r) { return r.train_loss; }},
         {"validation", "#ff7f0e", [](const auto& r) { return r.val_loss; }}},
        0.0, max_loss * 1.05);
  panel(out, records, kMargin + kPanelW + kGap, "accuracy",
        {{"train", "#1f77b4", [](const auto& r) { return r.train_acc; }},
         {"validation", "#ff7f0e", [](const auto& r) { return r.val_acc; }}},
        0.0, 1.0);
  out << "</svg>\n";
  return out.str();
}

}  // namespace qnlp::cli
