#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "elab/curve.hpp"

namespace elab::io {

/// Shortest form that still carries 17 significant digits.
std::string format_number(double value);

/// Header `s,x,y,theta,k`, one row per grid node.
void write_curve_csv(std::ostream& out, const curve::PlanarCurve& curve);

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

struct SvgCurve {
  const curve::PlanarCurve* curve;
  std::string label;
};

/// One <path> per curve, x and y axis lines and a text label per curve.
/// The viewBox covers all points with a 5% margin.
void write_svg(std::ostream& out, const std::vector<SvgCurve>& curves,
               const std::string& title = {});

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace elab::io
