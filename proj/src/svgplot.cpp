#include "xidx/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace xidx::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Mapper {
  double x_min, x_max, y_min, y_max;
  double px, py, pw, ph;  // plot viewport in pixels

  double mx(double x) const { return px + (x - x_min) / (x_max - x_min) * pw; }
  double my(double y) const { return py + (1.0 - (y - y_min) / (y_max - y_min)) * ph; }
};

// ~5 round-valued ticks covering [lo, hi]
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw_step = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw_step <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) out.push_back(t == 0.0 ? 0.0 : t);
  return out;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string ScatterPlot::render() const {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  if (!points.empty()) {
    x_min = x_max = points[0].first;
    y_min = y_max = points[0].second;
    for (const auto& [x, y] : points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  // pad 5% so edge points do not sit on the frame
  const double xpad = (x_max - x_min) == 0.0 ? 1.0 : (x_max - x_min) * 0.05;
  const double ypad = (y_max - y_min) == 0.0 ? 1.0 : (y_max - y_min) * 0.05;
  x_min -= xpad;
  x_max += xpad;
  y_min -= ypad;
  y_max += ypad;

  const Mapper m{x_min, x_max, y_min, y_max, 60.0, 40.0,
                 static_cast<double>(width) - 80.0, static_cast<double>(height) - 90.0};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";

  // frame
  out << "  <rect x=\"" << fmt(m.px) << "\" y=\"" << fmt(m.py) << "\" width=\"" << fmt(m.pw)
      << "\" height=\"" << fmt(m.ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  out << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : ticks(x_min, x_max)) {
    const double x = m.mx(t);
    out << "    <line x1=\"" << fmt(x) << "\" y1=\"" << fmt(m.py + m.ph) << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << fmt(m.py + m.ph + 5) << "\" stroke=\"#444\"/>\n";
    out << "    <text x=\"" << fmt(x) << "\" y=\"" << fmt(m.py + m.ph + 18)
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (double t : ticks(y_min, y_max)) {
    const double y = m.my(t);
    out << "    <line x1=\"" << fmt(m.px - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(m.px)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"#444\"/>\n";
    out << "    <text x=\"" << fmt(m.px - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  out << "  </g>\n";

  out << "  <text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(x_label) << "</text>\n";
  out << "  <text x=\"18\" y=\"" << height / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << height / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  if (fit && points.size() >= 2) {
    const double y1 = fit->slope * x_min + fit->intercept;
    const double y2 = fit->slope * x_max + fit->intercept;
    out << "  <line x1=\"" << fmt(m.mx(x_min)) << "\" y1=\"" << fmt(m.my(y1)) << "\" x2=\""
        << fmt(m.mx(x_max)) << "\" y2=\"" << fmt(m.my(y2))
        << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  }

  out << "  <g fill=\"#1f77b4\" fill-opacity=\"0.85\">\n";
  for (const auto& [x, y] : points)
    out << "    <circle cx=\"" << fmt(m.mx(x)) << "\" cy=\"" << fmt(m.my(y)) << "\" r=\"4\"/>\n";
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace xidx::svg
