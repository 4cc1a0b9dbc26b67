#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xidx/model.hpp"

namespace xidx::svg {

// Minimal scatter plot writer; no plotting dependency. One circle per
// point, optional least-squares line, linear axes with rounded ticks.
struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
  std::optional<RegressionFit> fit;
  int width = 640;
  int height = 480;

  std::string render() const;
};

std::string xml_escape(const std::string& s);

}  // namespace xidx::svg
