// Copyright 2026 The ecoorc Authors
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

#ifndef ECOORC_SVG_HPP_
#define ECOORC_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace ecoorc {
namespace svg {

enum class LineStyle { kSolid, kDashed, kDotted };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  LineStyle style = LineStyle::kSolid;
};

inline std::string escape(const std::string& s) {
  std::string out;
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

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Self-contained line chart writer. One <polyline> per series; no external
// assets so the files can be opened straight from the output directory.
class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)),
        x_label_(std::move(x_label)),
        y_label_(std::move(y_label)) {}

  void add_series(Series s) { series_.push_back(std::move(s)); }

  std::string render() const {
    const double w = 760, h = 420;
    const double ml = 72, mr = 16, mt = 34, mb = 52;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!any) {
          xmin = xmax = s.x[i];
          ymin = ymax = s.y[i];
          any = true;
        } else {
          xmin = std::min(xmin, s.x[i]);
          xmax = std::max(xmax, s.x[i]);
          ymin = std::min(ymin, s.y[i]);
          ymax = std::max(ymax, s.y[i]);
        }
      }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    if (ymin > 0) ymin = 0;  // footprints are magnitudes; anchor at zero
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " +
           fmt(h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(w / 2) + "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">" + escape(title_) +
           "</text>\n";

    // axes + ticks
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(h - mb) + "\" x2=\"" +
           fmt(w - mr) + "\" y2=\"" + fmt(h - mb) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
           fmt(ml) + "\" y2=\"" + fmt(h - mb) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 6; ++i) {
      double xv = xmin + (xmax - xmin) * i / 6.0;
      double yv = ymin + (ymax - ymin) * i / 6.0;
      out += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(h - mb) +
             "\" x2=\"" + fmt(px(xv)) + "\" y2=\"" + fmt(h - mb + 4) +
             "\" stroke=\"black\"/>\n";
      out += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(h - mb + 17) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"10\">" + fmt(xv) + "</text>\n";
      out += "<line x1=\"" + fmt(ml - 4) + "\" y1=\"" + fmt(py(yv)) +
             "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(py(yv)) +
             "\" stroke=\"black\"/>\n";
      out += "<text x=\"" + fmt(ml - 7) + "\" y=\"" + fmt(py(yv) + 3) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"10\">" + fmt(yv) + "</text>\n";
    }
    out += "<text x=\"" + fmt((ml + w - mr) / 2) + "\" y=\"" + fmt(h - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + escape(x_label_) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt((mt + h - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt((mt + h - mb) / 2) + ")\">" + escape(y_label_) + "</text>\n";

    static const char* palette[] = {"#2e7d32", "#1565c0", "#f9a825",
                                    "#c62828", "#6a1b9a", "#00838f",
                                    "#4e342e", "#37474f"};
    for (std::size_t si = 0; si < series_.size(); ++si) {
      const auto& s = series_[si];
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) pts += ' ';
        pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
      }
      std::string dash;
      if (s.style == LineStyle::kDashed) dash = " stroke-dasharray=\"8,4\"";
      if (s.style == LineStyle::kDotted) dash = " stroke-dasharray=\"2,3\"";
      out += "<polyline fill=\"none\" stroke=\"" +
             std::string(palette[si % 8]) + "\" stroke-width=\"1.5\"" + dash +
             " points=\"" + pts + "\"/>\n";
      // legend entry
      double ly = mt + 6 + 16.0 * static_cast<double>(si);
      out += "<line x1=\"" + fmt(w - mr - 150) + "\" y1=\"" + fmt(ly) +
             "\" x2=\"" + fmt(w - mr - 120) + "\" y2=\"" + fmt(ly) +
             "\" stroke=\"" + palette[si % 8] + "\" stroke-width=\"1.5\"" +
             dash + "/>\n";
      out += "<text x=\"" + fmt(w - mr - 114) + "\" y=\"" + fmt(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" +
             escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
  }

 private:
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace svg
}  // namespace ecoorc

#endif  // ECOORC_SVG_HPP_
