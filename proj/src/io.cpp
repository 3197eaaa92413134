#include "elab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elab/error.hpp"

namespace elab::io {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_curve_csv(std::ostream& out, const curve::PlanarCurve& c) {
  out << "s,x,y,theta,k\n";
  const std::size_t n = c.intervals();
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = c.length * static_cast<double>(i) / static_cast<double>(n);
    out << format_number(s) << ',' << format_number(c.points[i].x) << ','
        << format_number(c.points[i].y) << ',' << format_number(c.thetas[i]) << ','
        << format_number(c.curvatures[i]) << '\n';
  }
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << '\n';
  }
}

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

void write_svg(std::ostream& out, const std::vector<SvgCurve>& curves, const std::string& title) {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const SvgCurve& sc : curves) {
    for (const curve::Point& p : sc.curve->points) {
      if (first) {
        xmin = xmax = p.x;
        ymin = ymax = p.y;
        first = false;
      }
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double margin = 0.05 * span;
  xmin -= margin;
  xmax += margin;
  ymin -= margin;
  ymax += margin;
  const double stroke = span / 400.0;
  const double font = span / 30.0;

  // SVG y points down, so every y is negated.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(xmin) << ' '
      << format_number(-ymax) << ' ' << format_number(xmax - xmin) << ' '
      << format_number(ymax - ymin) << "\">\n";
  if (!title.empty()) {
    out << "  <title>" << escape_xml(title) << "</title>\n";
  }
  out << "  <line class=\"axis\" x1=\"" << format_number(xmin) << "\" y1=\"0\" x2=\""
      << format_number(xmax) << "\" y2=\"0\" stroke=\"#999\" stroke-width=\""
      << format_number(stroke / 2) << "\"/>\n";
  out << "  <line class=\"axis\" x1=\"0\" y1=\"" << format_number(-ymax) << "\" x2=\"0\" y2=\""
      << format_number(-ymin) << "\" stroke=\"#999\" stroke-width=\""
      << format_number(stroke / 2) << "\"/>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& pts = curves[c].curve->points;
    out << "  <path fill=\"none\" stroke=\"" << kColors[c % 4] << "\" stroke-width=\""
        << format_number(stroke) << "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out << (i ? " L" : "M") << format_number(pts[i].x) << ',' << format_number(-pts[i].y);
    }
    out << (curves[c].curve->closed ? " Z" : "") << "\"/>\n";
    if (!curves[c].label.empty()) {
      out << "  <text x=\"" << format_number(xmin + margin) << "\" y=\""
          << format_number(-ymax + margin + font * static_cast<double>(c + 1))
          << "\" font-size=\"" << format_number(font) << "\" fill=\"" << kColors[c % 4]
          << "\">" << escape_xml(curves[c].label) << "</text>\n";
    }
  }
  out << "</svg>\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  f << content;
}

}  // namespace elab::io
