// Copyright 2026 The epsense Authors
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

#include "epsense/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace epsense::cli {

namespace {

constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
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

struct Axis {
  bool log = false;
  double lo = 0.0;  // in transformed (log10 if log) units
  double hi = 1.0;

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool drawable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis fit_axis(bool log, const std::vector<double>& values) {
  Axis a;
  a.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!a.drawable(v)) continue;
    lo = std::min(lo, a.transform(v));
    hi = std::max(hi, a.transform(v));
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo <= 0.0) {
    const double pad = log ? 0.5 : std::max(1.0, std::abs(lo) * 0.1);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

// Tick positions in data units.
std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  if (a.log) {
    for (double d = std::ceil(a.lo); d <= a.hi; d += 1.0) t.push_back(std::pow(10.0, d));
    if (t.size() >= 2) return t;
    t.clear();
    for (double d = std::floor(a.lo); d <= std::ceil(a.hi); d += 1.0) {
      for (double m : {1.0, 2.0, 5.0}) {
        const double v = m * std::pow(10.0, d);
        const double lv = std::log10(v);
        if (lv >= a.lo && lv <= a.hi) t.push_back(v);
      }
    }
    return t;
  }
  const double step = nice_step(a.hi - a.lo);
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step) {
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis ax = fit_axis(spec.log_x, xs);
  const Axis ay = fit_axis(spec.log_y, ys);

  const double w = kCanvasWidth - kLeft - kRight;
  const double h = kCanvasHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * w; };
  auto sy = [&](double v) { return kTop + h - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * h; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvasWidth << "\" height=\""
    << kCanvasHeight << "\" viewBox=\"0 0 " << kCanvasWidth << ' ' << kCanvasHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << kCanvasWidth << "\" height=\"" << kCanvasHeight
    << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    o << "<text x=\"" << px(kLeft + w / 2) << "\" y=\"" << px(kTop / 2)
      << "\" text-anchor=\"middle\">" << xml_escape(spec.title) << "</text>\n";
  }
  o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(w)
    << "\" height=\"" << px(h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(ax)) {
    const double x = sx(t);
    o << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop + h) << "\" x2=\"" << px(x)
      << "\" y2=\"" << px(kTop + h + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + h + 18)
      << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double y = sy(t);
    o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft)
      << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(y + 4)
      << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  o << "<text x=\"" << px(kLeft + w / 2) << "\" y=\"" << px(kCanvasHeight - 15)
    << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n";
  o << "<text x=\"15\" y=\"" << px(kTop + h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
    << px(kTop + h / 2) << ")\">" << xml_escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::vector<std::string> runs;
    std::string current;
    std::size_t count = 0;
    auto flush = [&] {
      if (count >= 2) runs.push_back(current);
      current.clear();
      count = 0;
    };
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!ax.drawable(s.x[i]) || !ay.drawable(s.y[i])) {
        flush();
        continue;
      }
      if (count) current += ' ';
      current += px(sx(s.x[i])) + "," + px(sy(s.y[i]));
      ++count;
    }
    flush();
    for (const auto& pts : runs) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
        << pts << "\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    const double lx = kLeft + w + 12;
    o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 20)
      << "\" y2=\"" << px(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    o << "<text x=\"" << px(lx + 26) << "\" y=\"" << px(ly + 4) << "\">" << xml_escape(s.name)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace epsense::cli
