#pragma once

// Rasterization of domain specs into gray-coverage grids, and discrete
// area/perimeter estimators for thresholded sets (pixel counting and
// subpixel marching-squares contours).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cheegerlab/cantor.hpp"
#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

inline constexpr int kMinGridSize = 64;
inline constexpr int kMaxGridSize = 4096;
inline constexpr int kRasterMarginPixels = 4;
inline constexpr int kSubsampleDefault = 4;

// Holes with diameter below half a pixel cannot be resolved by the grid;
// they are dropped from the raster and accounted here so measure users can
// correct exactly.
struct ExcludedHoles {
  int count = 0;
  double perimeter_sum = 0;  // sum of 2 pi r over excluded holes
  double area_sum = 0;       // sum of pi r^2 over excluded holes
};

struct RasterField {
  int nx = 0;
  int ny = 0;
  double pixel = 0;
  Point2 origin{0, 0};  // lower-left corner of pixel (0, 0)
  std::vector<double> values;   // coverage / relaxed indicator in [0, 1]
  std::vector<std::uint8_t> mask;  // inside-domain flags
  ExcludedHoles excluded;

  std::size_t size() const { return values.size(); }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  double value(int i, int j) const { return values[idx(i, j)]; }
  bool inside(int i, int j) const { return mask[idx(i, j)] != 0; }
  Point2 pixel_center(int i, int j) const {
    return Point2{origin.x + (i + 0.5) * pixel, origin.y + (j + 0.5) * pixel};
  }
};

namespace detail {

// Membership test against the exact spec.  For slit-type specs the removed
// set is the residual segments on the axis (measure zero) plus the solid
// bump regions over the gaps; gap lookup is a binary search over midpoints.
class InsideTester {
 public:
  explicit InsideTester(const DomainSpec& spec, double min_hole_radius)
      : spec_(spec) {
    if (spec.kind == ObstacleKind::holes) {
      for (const auto& hole : spec.holes) {
        if (hole.radius < min_hole_radius) {
          excluded_.count += 1;
          excluded_.perimeter_sum += kTwoPi * hole.radius;
          excluded_.area_sum += kPi * hole.radius * hole.radius;
        } else {
          resolved_.push_back(hole);
        }
      }
    } else if (spec.kind == ObstacleKind::cantor_bumps) {
      gaps_ = spec.cantor.gaps;
      std::sort(gaps_.begin(), gaps_.end(),
                [](const GapRecord& a, const GapRecord& b) {
                  return a.midpoint < b.midpoint;
                });
      mids_.reserve(gaps_.size());
      for (const auto& g : gaps_) mids_.push_back(g.midpoint);
      slit_half_width_ = spec.cantor.epsilon;
      double max_half = 0;
      for (const auto& g : gaps_) max_half = std::max(max_half, g.half_length);
      max_bump_height_ = max_half > 0 ? bump_height(max_half) : 0.0;
    }
  }

  const ExcludedHoles& excluded() const { return excluded_; }

  bool operator()(Point2 p) const {
    const Point2 rel = p - spec_.outer.center;
    if (rel.norm2() > spec_.outer.radius * spec_.outer.radius) return false;
    switch (spec_.kind) {
      case ObstacleKind::none:
        return true;
      case ObstacleKind::holes:
        for (const auto& hole : resolved_) {
          const Point2 d = p - hole.center;
          if (d.norm2() <= hole.radius * hole.radius) return false;
        }
        return true;
      case ObstacleKind::cantor_bumps: {
        const double ax = std::abs(rel.x);
        const double ay = std::abs(rel.y);
        if (ax > slit_half_width_ || ay > max_bump_height_) return true;
        if (ay == 0.0) return false;  // residual slit on the axis
        // Candidate gap: the one whose midpoint is nearest to x.
        auto it = std::lower_bound(mids_.begin(), mids_.end(), rel.x);
        for (int step = 0; step < 2; ++step, --it) {
          if (it != mids_.end() && it >= mids_.begin()) {
            const auto& g = gaps_[static_cast<std::size_t>(
                it - mids_.begin())];
            const double dx = std::abs(rel.x - g.midpoint);
            if (dx <= g.half_length &&
                ay <= bump_profile(g.half_length, dx)) {
              return false;
            }
          }
          if (it == mids_.begin()) break;
        }
        return true;
      }
    }
    return false;
  }

 private:
  const DomainSpec& spec_;
  std::vector<Disk> resolved_;
  ExcludedHoles excluded_;
  std::vector<GapRecord> gaps_;
  std::vector<double> mids_;
  double slit_half_width_ = 0;
  double max_bump_height_ = 0;
};

}  // namespace detail

// Gray-coverage rasterization on a grid of n x n pixels across the outer
// disk's bounding box, padded by a fixed margin, with k x k subsampling per
// pixel.  The grid is centered on the outer disk's center so that axis
// reflections of the domain map pixels to pixels exactly.
inline RasterField rasterize(const DomainSpec& spec, int n,
                             int subsample = kSubsampleDefault) {
  if (n < kMinGridSize) {
    throw InvalidInputError("grid size must be at least 64");
  }
  if (n > kMaxGridSize) {
    throw InvalidInputError("grid size exceeds the configured maximum");
  }
  if (subsample < 1 || subsample > 16) {
    throw InvalidInputError("subsample factor must lie in [1, 16]");
  }
  RasterField field;
  // Radius-zero outer disk encodes an empty domain: an all-zero field on a
  // unit-box grid.
  const bool empty_domain = !(spec.outer.radius > 0.0);
  field.pixel = empty_domain ? 2.0 / n : 2.0 * spec.outer.radius / n;
  field.nx = n + 2 * kRasterMarginPixels;
  field.ny = field.nx;
  field.origin = spec.outer.center -
                 Point2{0.5 * field.nx * field.pixel,
                        0.5 * field.ny * field.pixel};
  field.values.assign(static_cast<std::size_t>(field.nx) * field.ny, 0.0);
  field.mask.assign(field.values.size(), 0);
  if (empty_domain) return field;

  detail::InsideTester inside(spec, 0.25 * field.pixel);
  field.excluded = inside.excluded();

  const int k = subsample;
  const double inv_k2 = 1.0 / (k * k);
  const double sub = field.pixel / k;
  for (int j = 0; j < field.ny; ++j) {
    const double y0 = field.origin.y + j * field.pixel;
    for (int i = 0; i < field.nx; ++i) {
      const double x0 = field.origin.x + i * field.pixel;
      int hits = 0;
      for (int b = 0; b < k; ++b) {
        const double y = y0 + (b + 0.5) * sub;
        for (int a = 0; a < k; ++a) {
          if (inside(Point2{x0 + (a + 0.5) * sub, y})) ++hits;
        }
      }
      if (hits > 0) {
        const std::size_t at = field.idx(i, j);
        field.values[at] = hits * inv_k2;
        field.mask[at] = 1;
      }
    }
  }
  return field;
}

// Discrete area: pixel counting at the given threshold.
inline double grid_area(const RasterField& field, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidInputError("threshold must lie in (0, 1)");
  }
  std::size_t count = 0;
  for (const double v : field.values) {
    if (v >= threshold) ++count;
  }
  return static_cast<double>(count) * field.pixel * field.pixel;
}

namespace detail {

// Linear-interpolation crossing on an edge from value u to value w.
inline double edge_cross(double u, double w, double t) {
  const double denom = w - u;
  if (denom == 0.0) return 0.5;
  return std::clamp((t - u) / denom, 0.0, 1.0);
}

}  // namespace detail

namespace detail {

// Marching-squares traversal on the pixel-center lattice with a virtual
// zero ring outside the array so boundary pixels close their contours.
// Saddle cells are disambiguated by the cell-center average.  Segment
// endpoints are emitted in cell-local coordinates (unit cell); `emit`
// receives (cell I, cell J, a, b).
template <typename Emit>
inline void for_each_contour_segment(const RasterField& field,
                                     double threshold, Emit&& emit) {
  const double t = threshold;
  const int nx = field.nx;
  const int ny = field.ny;
  const auto node = [&](int I, int J) -> double {
    if (I < 0 || J < 0 || I >= nx || J >= ny) return 0.0;
    return field.values[field.idx(I, J)];
  };
  // Cells span node (I, J) .. (I+1, J+1) on the extended lattice.
  for (int J = -1; J < ny; ++J) {
    for (int I = -1; I < nx; ++I) {
      const double v0 = node(I, J);          // bottom-left
      const double v1 = node(I + 1, J);      // bottom-right
      const double v2 = node(I + 1, J + 1);  // top-right
      const double v3 = node(I, J + 1);      // top-left
      const int code = (v0 >= t ? 1 : 0) | (v1 >= t ? 2 : 0) |
                       (v2 >= t ? 4 : 0) | (v3 >= t ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const Point2 B{edge_cross(v0, v1, t), 0.0};
      const Point2 R{1.0, edge_cross(v1, v2, t)};
      const Point2 T{edge_cross(v3, v2, t), 1.0};
      const Point2 L{0.0, edge_cross(v0, v3, t)};
      const auto seg = [&](const Point2& a, const Point2& b) {
        emit(I, J, a, b);
      };
      switch (code) {
        case 1: seg(L, B); break;
        case 2: seg(B, R); break;
        case 3: seg(L, R); break;
        case 4: seg(T, R); break;
        case 5: {  // saddle: high corners on the main diagonal
          const double m = 0.25 * (v0 + v1 + v2 + v3);
          if (m >= t) { seg(L, T); seg(B, R); }
          else { seg(L, B); seg(T, R); }
          break;
        }
        case 6: seg(B, T); break;
        case 7: seg(L, T); break;
        case 8: seg(L, T); break;
        case 9: seg(B, T); break;
        case 10: {  // saddle: high corners on the anti-diagonal
          const double m = 0.25 * (v0 + v1 + v2 + v3);
          if (m >= t) { seg(L, B); seg(T, R); }
          else { seg(B, R); seg(L, T); }
          break;
        }
        case 11: seg(T, R); break;
        case 12: seg(L, R); break;
        case 13: seg(B, R); break;
        case 14: seg(L, B); break;
        default: break;
      }
    }
  }
}

}  // namespace detail

// Subpixel contour length of the thresholded set via marching squares with
// linear interpolation.  On gray coverage fields the estimate is
// subpixel-accurate; on hard binary data every crossing sits at an edge
// midpoint, which documents as a small constant-factor overestimate on
// diagonal contours.
inline double grid_perimeter(const RasterField& field, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidInputError("threshold must lie in (0, 1)");
  }
  double length = 0;
  detail::for_each_contour_segment(
      field, threshold,
      [&](int, int, const Point2& a, const Point2& b) {
        length += std::hypot(b.x - a.x, b.y - a.y);
      });
  return length * field.pixel;
}

// Contour of the thresholded set as plane-coordinate segments (used by the
// vector renderer).
inline std::vector<std::pair<Point2, Point2>> contour_segments(
    const RasterField& field, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidInputError("threshold must lie in (0, 1)");
  }
  std::vector<std::pair<Point2, Point2>> segments;
  const double px = field.pixel;
  // Node (I, J) sits at the center of pixel (I, J).
  const Point2 base = field.origin + Point2{0.5 * px, 0.5 * px};
  detail::for_each_contour_segment(
      field, threshold,
      [&](int I, int J, const Point2& a, const Point2& b) {
        segments.emplace_back(
            Point2{base.x + (I + a.x) * px, base.y + (J + a.y) * px},
            Point2{base.x + (I + b.x) * px, base.y + (J + b.y) * px});
      });
  return segments;
}

// Number of 4-connected components of the thresholded set.
inline int count_components(const RasterField& field, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0)) {
    throw InvalidInputError("threshold must lie in (0, 1)");
  }
  const int nx = field.nx;
  const int ny = field.ny;
  std::vector<std::uint8_t> seen(field.size(), 0);
  int components = 0;
  std::vector<std::size_t> stack;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t at = field.idx(i, j);
      if (seen[at] || field.values[at] < threshold) continue;
      ++components;
      seen[at] = 1;
      stack.assign(1, at);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int ci = static_cast<int>(cur % nx);
        const int cj = static_cast<int>(cur / nx);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = ci + di[d];
          const int nj = cj + dj[d];
          if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) continue;
          const std::size_t nat = field.idx(ni, nj);
          if (!seen[nat] && field.values[nat] >= threshold) {
            seen[nat] = 1;
            stack.push_back(nat);
          }
        }
      }
    }
  }
  return components;
}

namespace detail {

inline std::vector<std::uint8_t> threshold_bits(const RasterField& field,
                                                double t) {
  std::vector<std::uint8_t> bits(field.size(), 0);
  for (std::size_t k = 0; k < field.size(); ++k) {
    bits[k] = field.values[k] >= t ? 1 : 0;
  }
  return bits;
}

// 8-neighborhood dilation (grow = true) or erosion (grow = false) by one
// pixel.
inline std::vector<std::uint8_t> morph_one(const std::vector<std::uint8_t>& in,
                                           int nx, int ny, bool grow) {
  std::vector<std::uint8_t> out(in.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      bool any = false;
      bool all = true;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ni = i + di;
          const int nj = j + dj;
          const bool v = ni >= 0 && nj >= 0 && ni < nx && nj < ny &&
                         in[static_cast<std::size_t>(nj) * nx + ni] != 0;
          any = any || v;
          all = all && v;
        }
      }
      out[static_cast<std::size_t>(j) * nx + i] = grow ? any : all;
    }
  }
  return out;
}

}  // namespace detail

// True when the thresholded set agrees with its own reflection across the
// grid's vertical (axis = 0) or horizontal (axis = 1) center line up to a
// one-pixel boundary band: erode(E) subset reflect(E) subset dilate(E).
// The raster grid is centered on the outer disk, so the reflection is an
// exact index map.
inline bool symmetric_within_band(const RasterField& field, double threshold,
                                  int axis) {
  if (axis != 0 && axis != 1) {
    throw InvalidInputError("axis must be 0 (mirror x) or 1 (mirror y)");
  }
  const int nx = field.nx;
  const int ny = field.ny;
  const auto bits = detail::threshold_bits(field, threshold);
  const auto grown = detail::morph_one(bits, nx, ny, true);
  const auto shrunk = detail::morph_one(bits, nx, ny, false);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int ri = axis == 0 ? nx - 1 - i : i;
      const int rj = axis == 1 ? ny - 1 - j : j;
      const std::size_t at = static_cast<std::size_t>(j) * nx + i;
      const std::size_t rat = static_cast<std::size_t>(rj) * nx + ri;
      if (bits[rat] && !grown[at]) return false;   // reflection adds pixels
      if (shrunk[at] && !bits[rat]) return false;  // reflection drops pixels
    }
  }
  return true;
}

}  // namespace cheegerlab
