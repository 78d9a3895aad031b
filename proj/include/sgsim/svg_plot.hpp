// Minimal static SVG line charts (axes, ticks, legend, optional log-x).
// Output depends only on the data handed in, so re-plotting from the same CSV
// reproduces identical files.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace sgsim {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void set_log_x(bool on) { log_x_ = on; }
  void set_log_y(bool on) { log_y_ = on; }
  void add_series(PlotSeries s) { series_.push_back(std::move(s)); }

  std::string render() const {
    const double w = 760, h = 480;
    const double ml = 70, mr = 160, mt = 40, mb = 55;
    const double pw = w - ml - mr, ph = h - mt - mb;

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double x = tx(s.x[i]), y = ty(s.y[i]);
        if (first) {
          x_min = x_max = x;
          y_min = y_max = y;
          first = false;
        } else {
          x_min = std::min(x_min, x);
          x_max = std::max(x_max, x);
          y_min = std::min(y_min, y);
          y_max = std::max(y_max, y);
        }
      }
    }
    if (x_max - x_min < 1e-12) x_max = x_min + 1.0;
    if (y_max - y_min < 1e-12) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto px = [&](double x) { return ml + (tx(x) - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + ph - (ty(y) - y_min) / (y_max - y_min) * ph; };

    std::string svg;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n",
                  w, h, w, h);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
                  ml + pw / 2, title_.c_str());
    svg += buf;

    // Axes box.
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, pw, ph);
    svg += buf;

    // Ticks: 6 per axis on the transformed scale.
    for (int i = 0; i <= 5; ++i) {
      const double fx = x_min + (x_max - x_min) * i / 5.0;
      const double fy = y_min + (y_max - y_min) * i / 5.0;
      const double vx = log_x_ ? std::pow(10.0, fx) : fx;
      const double vy = log_y_ ? std::pow(10.0, fy) : fy;
      const double sx = ml + pw * i / 5.0;
      const double sy = mt + ph - ph * i / 5.0;
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n",
                    sx, mt, sx, mt + ph);
      svg += buf;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n", sx,
                    mt + ph + 18, format_tick(vx).c_str());
      svg += buf;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n", ml - 6, sy + 4,
                    format_tick(vy).c_str());
      svg += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n", ml + pw / 2,
                  h - 12, x_label_.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
                  "%.1f)\">%s</text>\n",
                  mt + ph / 2, mt + ph / 2, y_label_.c_str());
    svg += buf;

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    for (std::size_t si = 0; si < series_.size(); ++si) {
      const auto& s = series_[si];
      const char* color = colors[si % 8];
      std::string points;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(s.x[i]), py(s.y[i]));
        points += buf;
      }
      std::snprintf(buf, sizeof buf,
                    "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"%s\"/>\n",
                    color, points.c_str());
      svg += buf;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n",
                      px(s.x[i]), py(s.y[i]), color);
        svg += buf;
      }
      const double ly = mt + 16 + 18 * static_cast<double>(si);
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                    "stroke-width=\"2\"/>\n",
                    ml + pw + 10, ly, ml + pw + 30, ly, color);
      svg += buf;
      std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\">%s</text>\n", ml + pw + 35,
                    ly + 4, s.label.c_str());
      svg += buf;
    }
    svg += "</svg>\n";
    return svg;
  }

 private:
  double tx(double x) const { return log_x_ ? std::log10(std::max(x, 1e-12)) : x; }
  double ty(double y) const { return log_y_ ? std::log10(std::max(y, 1e-12)) : y; }

  static std::string format_tick(double v) {
    char buf[64];
    if (std::abs(v) >= 1000.0 || (std::abs(v) < 0.01 && v != 0.0))
      std::snprintf(buf, sizeof buf, "%.3g", v);
    else
      std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }

  std::string title_, x_label_, y_label_;
  bool log_x_ = false, log_y_ = false;
  std::vector<PlotSeries> series_;
};

}  // namespace sgsim
