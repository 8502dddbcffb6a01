#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheeger/arc_polygon.hpp"

namespace cheeger {

struct CheegerResult {
  double h = 0.0;
  /// 1/h; the radius of every free-boundary arc of the Cheeger set.
  double r_star = 0.0;
  std::optional<geometry::ArcPolygon> cheeger_set;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  /// Dimensionless k with h = 1/a + k/|Gamma|, for strips, sectors and rectangles.
  std::optional<double> k;
  std::string method;
  double tolerance = 0.0;
  std::vector<std::string> warnings;
};

}  // namespace cheeger
