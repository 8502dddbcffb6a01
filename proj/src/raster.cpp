#include "cheeger/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "cheeger/parallel.hpp"

namespace cheeger::raster {

using geometry::EdgeRole;

namespace {

// x-coordinates where the horizontal line at height y crosses the edge (half-open in y for
// segments so shared vertices are counted once).
void crossings(const Piece& p, double y, std::vector<double>& xs) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    const Vec2 a = s->start;
    const Vec2 b = s->end;
    if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
    return;
  }
  const auto& arc = std::get<Arc>(p);
  const double dy = y - arc.center.y;
  if (std::abs(dy) >= arc.radius) return;
  const double dx = std::sqrt(arc.radius * arc.radius - dy * dy);
  for (const double x : {arc.center.x - dx, arc.center.x + dx}) {
    if (arc.covers_angle(std::atan2(dy, x - arc.center.x))) xs.push_back(x);
  }
}

void cut_slit(Raster& r, const Segment& s) {
  const double half = 0.5 * r.pixel;
  const double x0 = std::min(s.start.x, s.end.x) - r.pixel;
  const double x1 = std::max(s.start.x, s.end.x) + r.pixel;
  const double y0 = std::min(s.start.y, s.end.y) - r.pixel;
  const double y1 = std::max(s.start.y, s.end.y) + r.pixel;
  const int i0 = std::max(0, static_cast<int>(std::floor((x0 - r.origin.x) / r.pixel)));
  const int i1 = std::min(r.width - 1, static_cast<int>(std::ceil((x1 - r.origin.x) / r.pixel)));
  const int j0 = std::max(0, static_cast<int>(std::floor((y0 - r.origin.y) / r.pixel)));
  const int j1 = std::min(r.height - 1, static_cast<int>(std::ceil((y1 - r.origin.y) / r.pixel)));
  const Piece piece = s;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      if (piece_distance(piece, r.center(i, j)) <= half) {
        r.mask[static_cast<std::size_t>(j) * r.width + i] = 0;
      }
    }
  }
}

void transform_1d(const double* f, std::size_t n, std::size_t stride, double* out,
                  std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  // skip leading infinite samples: parabolas rooted at infinity never win
  std::size_t first = 0;
  while (first < n && f[first * stride] == inf) ++first;
  if (first == n) {
    for (std::size_t q = 0; q < n; ++q) out[q * stride] = inf;
    return;
  }
  v[0] = static_cast<int>(first);
  z[0] = -inf;
  z[1] = inf;
  for (std::size_t q = first + 1; q < n; ++q) {
    const double fq = f[q * stride];
    if (fq == inf) continue;
    const double dq = static_cast<double>(q);
    double s = 0.0;
    while (true) {
      const double p = v[k];
      s = ((fq + dq * dq) - (f[static_cast<std::size_t>(v[k]) * stride] + p * p)) / (2.0 * dq - 2.0 * p);
      if (s <= z[k] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere
      v[0] = static_cast<int>(q);
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    ++k;
    v[k] = static_cast<int>(q);
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double dq = static_cast<double>(q);
    while (z[k + 1] < dq) ++k;
    const double diff = dq - v[k];
    out[q * stride] = diff * diff + f[static_cast<std::size_t>(v[k]) * stride];
  }
}

}  // namespace

std::size_t Raster::count() const {
  return static_cast<std::size_t>(std::count_if(mask.begin(), mask.end(), [](auto m) { return m != 0; }));
}

Raster rasterize(const ArcPolygon& shape, int resolution) {
  if (resolution < 8) throw DomainError("raster resolution must be at least 8");
  const auto box = shape.bounds();
  const double extent = std::max(box.width(), box.height());
  if (!(extent > 0.0)) throw DomainError("shape has empty extent");
  Raster r;
  r.pixel = extent / resolution;
  constexpr int margin = 3;
  // an irrational-looking offset keeps pixel centres off symmetry lines and vertices
  r.origin = box.lo - Vec2{(margin + 0.37) * r.pixel, (margin + 0.37) * r.pixel};
  r.width = static_cast<int>(std::ceil(box.width() / r.pixel)) + 2 * margin + 1;
  r.height = static_cast<int>(std::ceil(box.height() / r.pixel)) + 2 * margin + 1;
  r.mask.assign(static_cast<std::size_t>(r.width) * r.height, 0);

  const auto edges = shape.all_edges();
  parallel_for(static_cast<std::size_t>(r.height), [&](std::size_t row) {
    const int j = static_cast<int>(row);
    const double y = r.origin.y + (j + 0.5) * r.pixel;
    std::vector<double> xs;
    for (const auto* e : edges) crossings(e->piece, y, xs);
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - r.origin.x) / r.pixel - 0.5)));
      const int i1 =
          std::min(r.width - 1, static_cast<int>(std::floor((xs[k + 1] - r.origin.x) / r.pixel - 0.5)));
      for (int i = i0; i <= i1; ++i) r.mask[static_cast<std::size_t>(j) * r.width + i] = 1;
    }
  });
  for (const auto* e : edges) {
    if (e->role != EdgeRole::slit) continue;
    if (const auto* s = std::get_if<Segment>(&e->piece)) cut_slit(r, *s);
  }
  return r;
}

std::vector<double> squared_distance_transform(const std::vector<std::uint8_t>& feature, int width,
                                               int height) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto w = static_cast<std::size_t>(width);
  const auto h = static_cast<std::size_t>(height);
  std::vector<double> f(w * h);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = feature[k] ? 0.0 : inf;
  std::vector<double> tmp(w * h);
  parallel_for(w, [&](std::size_t i) {
    std::vector<int> v;
    std::vector<double> z;
    transform_1d(f.data() + i, h, w, tmp.data() + i, v, z);
  });
  parallel_for(h, [&](std::size_t j) {
    std::vector<int> v;
    std::vector<double> z;
    transform_1d(tmp.data() + j * w, w, 1, f.data() + j * w, v, z);
  });
  return f;
}

Metrics marching_squares(const std::vector<double>& phi, int width, int height, double pixel) {
  const auto w = static_cast<std::size_t>(width);
  std::vector<double> row_area(static_cast<std::size_t>(std::max(height - 1, 0)), 0.0);
  std::vector<double> row_length(row_area.size(), 0.0);
  parallel_for(row_area.size(), [&](std::size_t j) {
    double area = 0.0;
    double length = 0.0;
    for (std::size_t i = 0; i + 1 < w; ++i) {
      const std::array<Vec2, 4> corner{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}};
      const std::array<double, 4> val{phi[j * w + i], phi[j * w + i + 1], phi[(j + 1) * w + i + 1],
                                      phi[(j + 1) * w + i]};
      const bool any_in = val[0] < 0 || val[1] < 0 || val[2] < 0 || val[3] < 0;
      if (!any_in) continue;
      if (val[0] < 0 && val[1] < 0 && val[2] < 0 && val[3] < 0) {
        area += 1.0;
        continue;
      }
      // boundary walk of the inside part: inside corners and edge crossings in order
      std::array<Vec2, 8> poly;
      std::array<bool, 8> is_cross{};
      std::size_t n = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t m = (k + 1) % 4;
        if (val[k] < 0) poly[n++] = corner[k];
        if ((val[k] < 0) != (val[m] < 0)) {
          const double s = val[k] / (val[k] - val[m]);
          is_cross[n] = true;
          poly[n++] = corner[k] + s * (corner[m] - corner[k]);
        }
      }
      double twice = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = (k + 1) % n;
        twice += cross(poly[k], poly[m]);
        if (is_cross[k] && is_cross[m]) length += distance(poly[k], poly[m]);
      }
      area += 0.5 * twice;
    }
    row_area[j] = area;
    row_length[j] = length;
  });
  Metrics m;
  for (std::size_t j = 0; j < row_area.size(); ++j) {
    m.area += row_area[j];
    m.perimeter += row_length[j];
  }
  m.area *= pixel * pixel;
  m.perimeter *= pixel;
  return m;
}

std::optional<Metrics> grid_opening(const Raster& mask, double r) {
  if (!(r >= 0.0)) throw DomainError("opening radius must be nonnegative");
  if (mask.count() == 0) throw DomainError("mask is empty");
  const std::size_t n = mask.mask.size();
  const double h = mask.pixel;
  std::vector<std::uint8_t> background(n);
  for (std::size_t k = 0; k < n; ++k) background[k] = mask.mask[k] ? 0 : 1;
  const auto d1 = squared_distance_transform(background, mask.width, mask.height);
  // pixel centres sit half a pixel inside the sampled boundary
  const double erode = (r + 0.5 * h) / h;
  std::vector<std::uint8_t> eroded(n);
  bool any = false;
  for (std::size_t k = 0; k < n; ++k) {
    eroded[k] = mask.mask[k] && d1[k] > erode * erode;
    any = any || eroded[k];
  }
  if (!any) return std::nullopt;
  const auto d2 = squared_distance_transform(eroded, mask.width, mask.height);
  std::vector<double> phi(n);
  for (std::size_t k = 0; k < n; ++k) phi[k] = std::sqrt(d2[k]) * h - 0.5 * h - r;
  return marching_squares(phi, mask.width, mask.height, h);
}

Extrapolation richardson(double coarse, double middle, double fine) {
  const double d1 = coarse - middle;
  const double d2 = middle - fine;
  Extrapolation e;
  if (d1 == 0.0 && d2 == 0.0) return {fine, 0.0, true};
  if (!(d1 * d2 > 0.0) || !(std::abs(d2) < std::abs(d1))) return {fine, 0.0, false};
  e.observed_order = std::log2(d1 / d2);
  e.value = 2.0 * fine - middle;
  e.confident = true;
  return e;
}

std::optional<GridEstimate> grid_opening_extrapolated(const ArcPolygon& shape, double r,
                                                      int base_resolution) {
  std::array<Metrics, 3> m;
  for (int k = 0; k < 3; ++k) {
    const auto res = grid_opening(rasterize(shape, base_resolution << k), r);
    if (!res) return std::nullopt;
    m[static_cast<std::size_t>(k)] = *res;
  }
  GridEstimate g;
  g.perimeter = richardson(m[0].perimeter, m[1].perimeter, m[2].perimeter);
  g.area = richardson(m[0].area, m[1].area, m[2].area);
  g.quotient = richardson(m[0].quotient(), m[1].quotient(), m[2].quotient());
  g.metrics = {g.perimeter.value, g.area.value};
  return g;
}

void write_pgm(std::ostream& out, const Raster& raster) {
  out << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
  for (int j = raster.height - 1; j >= 0; --j) {
    for (int i = 0; i < raster.width; ++i) out.put(raster.at(i, j) ? static_cast<char>(255) : '\0');
  }
}

Raster read_pgm(std::istream& in, double pixel, Vec2 origin) {
  auto token = [&in]() {
    std::string t;
    while (in >> t) {
      if (t.front() != '#') return t;
      std::string rest;
      std::getline(in, rest);
    }
    throw ValidationError("truncated PGM header");
  };
  const std::string magic = token();
  if (magic != "P5" && magic != "P2") throw ValidationError("not a PGM file");
  Raster r;
  r.pixel = pixel;
  r.origin = origin;
  try {
    r.width = std::stoi(token());
    r.height = std::stoi(token());
  } catch (const std::exception&) {
    throw ValidationError("bad PGM dimensions");
  }
  const int maxval = std::stoi(token());
  if (r.width <= 0 || r.height <= 0 || maxval <= 0 || maxval > 65535) {
    throw ValidationError("bad PGM header");
  }
  r.mask.assign(static_cast<std::size_t>(r.width) * r.height, 0);
  if (magic == "P5") in.get();
  for (int row = 0; row < r.height; ++row) {
    const int j = r.height - 1 - row;
    for (int i = 0; i < r.width; ++i) {
      int v = 0;
      if (magic == "P2") {
        v = std::stoi(token());
      } else if (maxval < 256) {
        v = in.get();
      } else {
        const int hi = in.get();
        v = hi * 256 + in.get();
      }
      if (!in) throw ValidationError("truncated PGM data");
      r.mask[static_cast<std::size_t>(j) * r.width + i] = 2 * v > maxval ? 1 : 0;
    }
  }
  return r;
}

}  // namespace cheeger::raster
