#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cheeger/arc_polygon.hpp"

namespace cheeger::raster {

using geometry::ArcPolygon;
using geometry::Metrics;

/// Boolean mask on a regular grid. Pixel (i, j) has centre origin + ((i + 0.5), (j + 0.5)) * pixel.
struct Raster {
  int width = 0;
  int height = 0;
  double pixel = 1.0;
  Vec2 origin;
  std::vector<std::uint8_t> mask;  ///< row-major, j * width + i; nonzero = inside

  bool at(int i, int j) const { return mask[static_cast<std::size_t>(j) * width + i] != 0; }
  Vec2 center(int i, int j) const {
    return origin + Vec2{(i + 0.5) * pixel, (j + 0.5) * pixel};
  }
  std::size_t count() const;
};

/// Samples `shape` at pixel centres; the longer side of the bounding box spans `resolution`
/// pixels. Slit edges are cut out as one-pixel-wide lines.
Raster rasterize(const ArcPolygon& shape, int resolution);

/// Squared Euclidean distance (in pixel units) from every pixel centre to the nearest pixel
/// centre where `feature` is set.
std::vector<double> squared_distance_transform(const std::vector<std::uint8_t>& feature, int width,
                                               int height);

/// Perimeter and area of {phi < 0} from marching squares on the pixel-centre samples of phi.
Metrics marching_squares(const std::vector<double>& phi, int width, int height, double pixel);

/// Opening of the mask by the disc of radius r: erosion by a distance transform, dilation by
/// the distance transform of the eroded set, contour of the result. Empty when the erosion is.
std::optional<Metrics> grid_opening(const Raster& mask, double r);

struct Extrapolation {
  double value = 0.0;
  double observed_order = 0.0;
  bool confident = false;
};

/// Richardson extrapolation of values at resolutions n, 2n, 4n assuming O(1/n) error.
/// A non-monotone triplet returns the finest value with `confident == false`.
Extrapolation richardson(double coarse, double middle, double fine);

/// Opening metrics at resolutions base, 2 base, 4 base, each component extrapolated.
struct GridEstimate {
  Metrics metrics;
  Extrapolation perimeter;
  Extrapolation area;
  Extrapolation quotient;
};
std::optional<GridEstimate> grid_opening_extrapolated(const ArcPolygon& shape, double r,
                                                      int base_resolution);

void write_pgm(std::ostream& out, const Raster& raster);
/// Reads a binary (P5) or ASCII (P2) PGM; pixels above half the maximum value are inside.
Raster read_pgm(std::istream& in, double pixel, Vec2 origin = {});

}  // namespace cheeger::raster
