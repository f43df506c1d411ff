#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/porous.hpp"
#include "cheegerlab/raster.hpp"

using namespace cheegerlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Hand-built field: given size, pixel, and a fill predicate on indices.
template <typename F>
RasterField make_field(int nx, int ny, double pixel, F&& fill) {
  RasterField f;
  f.nx = nx;
  f.ny = ny;
  f.pixel = pixel;
  f.origin = Point2{0.0, 0.0};
  f.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  f.mask.assign(f.values.size(), 1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.values[f.idx(i, j)] = fill(i, j) ? 1.0 : 0.0;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("rasterize rejects out-of-range grids and subsampling") {
  const DomainSpec disk;
  REQUIRE_THROWS_AS(rasterize(disk, 63), InvalidInputError);
  REQUIRE_THROWS_AS(rasterize(disk, 4097), InvalidInputError);
  REQUIRE_THROWS_AS(rasterize(disk, 128, 0), InvalidInputError);
  REQUIRE_THROWS_AS(rasterize(disk, 128, 17), InvalidInputError);
  REQUIRE_NOTHROW(rasterize(disk, 64, 1));
}

TEST_CASE("raster geometry: margin, centering, and the empty encoding") {
  const DomainSpec disk;
  const RasterField f = rasterize(disk, 128);
  REQUIRE(f.nx == 128 + 2 * kRasterMarginPixels);
  REQUIRE(f.ny == f.nx);
  REQUIRE_THAT(f.pixel, WithinRel(2.0 / 128.0, 1e-15));
  // The mask never touches the border (margin pixels stay empty).
  for (int i = 0; i < f.nx; ++i) {
    REQUIRE(f.mask[f.idx(i, 0)] == 0);
    REQUIRE(f.mask[f.idx(i, f.ny - 1)] == 0);
    REQUIRE(f.mask[f.idx(0, i)] == 0);
    REQUIRE(f.mask[f.idx(f.nx - 1, i)] == 0);
  }
  // Center pixel is fully covered, grid is centered on the disk.
  REQUIRE(f.inside(f.nx / 2, f.ny / 2));
  REQUIRE(f.value(f.nx / 2, f.ny / 2) == 1.0);
  REQUIRE_THAT(f.origin.x + 0.5 * f.nx * f.pixel, WithinAbs(0.0, 1e-12));

  // Radius-zero outer disk encodes an empty domain: all-zero field.
  DomainSpec empty;
  empty.outer.radius = 0.0;
  const RasterField e = rasterize(empty, 64);
  for (const auto v : e.values) REQUIRE(v == 0.0);
  for (const auto m : e.mask) REQUIRE(m == 0);
}

TEST_CASE("coverage sum reproduces the disk area to a tenth of a percent") {
  const DomainSpec disk;
  const RasterField f = rasterize(disk, 1024);
  double cov = 0.0;
  for (const double v : f.values) cov += v;
  cov *= f.pixel * f.pixel;
  REQUIRE_THAT(cov, WithinRel(kPi, 1e-3));
}

TEST_CASE("grid_area counts simple fields exactly") {
  const auto all = make_field(32, 32, 0.125, [](int, int) { return true; });
  REQUIRE_THAT(grid_area(all, 0.5), WithinRel(32 * 32 * 0.125 * 0.125, 1e-12));

  // Half-plane fill: half the box area up to one pixel row.
  const auto half = make_field(32, 32, 0.125,
                               [](int, int j) { return j < 16; });
  REQUIRE_THAT(grid_area(half, 0.5),
               WithinAbs(0.5 * 16.0, 32 * 0.125 * 0.125 + 1e-12));

  REQUIRE_THROWS_AS(grid_area(all, 0.0), InvalidInputError);
  REQUIRE_THROWS_AS(grid_area(all, 1.0), InvalidInputError);
  REQUIRE_THROWS_AS(grid_area(all, -0.5), InvalidInputError);
}

TEST_CASE("thresholded disk measures meet their analytic targets") {
  DomainSpec spec;
  spec.outer = Disk{{0.0, 0.0}, 0.8};
  const RasterField f512 = rasterize(spec, 512);
  REQUIRE_THAT(grid_perimeter(f512, 0.5), WithinRel(kTwoPi * 0.8, 0.01));
  REQUIRE_THAT(grid_area(f512, 0.5), WithinRel(kPi * 0.64, 0.005));

  const DomainSpec unit;
  const RasterField f1024 = rasterize(unit, 1024);
  REQUIRE_THAT(grid_area(f1024, 0.5), WithinRel(kPi, 0.005));
  REQUIRE_THAT(grid_perimeter(f1024, 0.5), WithinRel(kTwoPi, 0.01));
}

TEST_CASE("area refines at first order; perimeter keeps a flat isotropy bias") {
  const DomainSpec unit;
  std::vector<double> area_err;
  std::vector<double> per_rel;
  for (const int n : {128, 256, 512, 1024}) {
    const RasterField f = rasterize(unit, n);
    area_err.push_back(std::abs(grid_area(f, 0.5) - kPi) * n);
    per_rel.push_back(std::abs(grid_perimeter(f, 0.5) - kTwoPi) / kTwoPi);
  }
  // |area(n) - pi| <= C / n with one constant fitted at the coarsest level.
  const double c_fit = 1.5 * area_err.front();
  for (const double e : area_err) REQUIRE(e <= c_fit);
  // The contour length converges to a value offset from the analytic one
  // by the marching-squares isotropy bias: uniformly below half a percent,
  // but not refining with n.
  for (const double e : per_rel) REQUIRE(e < 0.0055);
}

TEST_CASE("whole-pixel translations leave the measures unchanged") {
  const int nx = 48;
  const auto blob = [](int i, int j) {
    const double x = i - 16.0;
    const double y = j - 14.0;
    return x * x + 0.7 * y * y < 81.0;
  };
  const auto f0 = make_field(nx, nx, 0.1, blob);
  const auto f1 = make_field(
      nx, nx, 0.1, [&blob](int i, int j) { return blob(i - 7, j - 9); });
  REQUIRE(grid_area(f0, 0.5) == grid_area(f1, 0.5));
  REQUIRE(grid_perimeter(f0, 0.5) == grid_perimeter(f1, 0.5));

  // Same invariance through the rasterizer: shift the disk center by an
  // exact pixel multiple.
  DomainSpec a;
  a.outer = Disk{{0.0, 0.0}, 0.8};
  DomainSpec b = a;
  const double px = 2.0 * 0.8 / 256.0;
  b.outer.center = Point2{3.0 * px, -5.0 * px};
  const RasterField fa = rasterize(a, 256);
  const RasterField fb = rasterize(b, 256);
  REQUIRE(grid_area(fa, 0.5) == grid_area(fb, 0.5));
  REQUIRE(grid_perimeter(fa, 0.5) == grid_perimeter(fb, 0.5));
}

TEST_CASE("single pixel contours to the interpolation diamond") {
  const double px = 0.25;
  const auto one = make_field(9, 9, px,
                              [](int i, int j) { return i == 4 && j == 4; });
  // Crossing at fraction (1 - t) from the hot pixel: a rhombus with
  // diagonal 2 (1 - t) pixels, perimeter 4 sqrt(2) (1 - t) px.
  for (const double t : {0.5, 0.25, 0.75}) {
    REQUIRE_THAT(grid_perimeter(one, t),
                 WithinRel(4.0 * std::sqrt(2.0) * (1.0 - t) * px, 1e-9));
  }
  REQUIRE_THAT(grid_area(one, 0.5), WithinRel(px * px, 1e-12));
}

TEST_CASE("axis-aligned rectangles contour to their side sums") {
  const double px = 0.125;
  const auto rect = make_field(40, 30, px, [](int i, int j) {
    return i >= 8 && i < 28 && j >= 5 && j < 21;
  });
  // 20 x 16 pixels of solid fill; linear interpolation places the contour
  // half a pixel outside the filled block, so each side reads one extra
  // pixel, minus the four corner diamonds' defect.
  const double w = 20 * px;
  const double h = 16 * px;
  REQUIRE_THAT(grid_perimeter(rect, 0.5),
               WithinAbs(2.0 * (w + h), 4.0 * px));
  REQUIRE_THAT(grid_area(rect, 0.5), WithinRel(w * h, 1e-12));
}

TEST_CASE("contour segments add up to the reported perimeter") {
  DomainSpec spec;
  spec.outer = Disk{{0.0, 0.0}, 0.9};
  const RasterField f = rasterize(spec, 128);
  const auto segs = contour_segments(f, 0.5);
  REQUIRE_FALSE(segs.empty());
  double total = 0.0;
  for (const auto& [a, b] : segs) total += distance(a, b);
  REQUIRE_THAT(total, WithinRel(grid_perimeter(f, 0.5), 1e-12));
}

TEST_CASE("subpixel holes are excluded with their measure tallied") {
  const SequenceParams seq = default_sequences(0.2, 1.0, 12);
  const DomainSpec porous = build_omega0(seq, 12);
  const RasterField f = rasterize(porous, 256);
  REQUIRE(f.excluded.count == 78);
  double per_sum = 0.0;
  double area_sum = 0.0;
  for (const auto& hole : porous.holes) {
    per_sum += kTwoPi * hole.radius;
    area_sum += kPi * hole.radius * hole.radius;
  }
  REQUIRE_THAT(f.excluded.perimeter_sum, WithinRel(per_sum, 1e-12));
  REQUIRE_THAT(f.excluded.area_sum, WithinRel(area_sum, 1e-12));

  // With every hole below a quarter pixel, the raster is bitwise the disk's.
  const RasterField disk = rasterize(DomainSpec{}, 256);
  REQUIRE(f.values == disk.values);
  REQUIRE(f.mask == disk.mask);
}

TEST_CASE("resolvable holes carve the mask and the measures") {
  DomainSpec spec;
  spec.kind = ObstacleKind::holes;
  spec.holes.push_back(Disk{{0.3, 0.2}, 0.05});
  const RasterField f = rasterize(spec, 512);
  REQUIRE(f.excluded.count == 0);

  const int ci = static_cast<int>((0.3 - f.origin.x) / f.pixel);
  const int cj = static_cast<int>((0.2 - f.origin.y) / f.pixel);
  REQUIRE_FALSE(f.inside(ci, cj));
  REQUIRE(f.value(ci, cj) == 0.0);

  REQUIRE_THAT(grid_area(f, 0.5), WithinRel(kPi - kPi * 0.05 * 0.05, 0.005));
  REQUIRE_THAT(grid_perimeter(f, 0.5),
               WithinRel(kTwoPi + kTwoPi * 0.05, 0.01));
  REQUIRE(count_components(f, 0.5) == 1);
}

TEST_CASE("slit bumps vanish below the subsampling resolution") {
  const DomainSpec slit = build_omega_eps(0.04, 12);
  const DomainSpec disk;
  for (const int n : {256, 1024}) {
    const RasterField fs = rasterize(slit, n);
    const RasterField fd = rasterize(disk, n);
    REQUIRE(fs.values == fd.values);
    REQUIRE(fs.mask == fd.mask);
  }
  // At finer grids a few axis pixels turn gray, but the mask still agrees:
  // the slit itself has measure zero and no bump swallows a whole pixel.
  const RasterField fs = rasterize(slit, 2048);
  const RasterField fd = rasterize(disk, 2048);
  REQUIRE(fs.mask == fd.mask);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    REQUIRE(fs.values[k] <= fd.values[k]);
  }
}

TEST_CASE("component counting separates blobs and respects thresholds") {
  const auto two = make_field(24, 24, 0.1, [](int i, int j) {
    const bool left = i >= 3 && i <= 8 && j >= 3 && j <= 8;
    const bool right = i >= 14 && i <= 20 && j >= 12 && j <= 18;
    return left || right;
  });
  REQUIRE(count_components(two, 0.5) == 2);

  const auto bridge = make_field(24, 24, 0.1, [](int i, int j) {
    const bool left = i >= 3 && i <= 8 && j >= 3 && j <= 8;
    const bool right = i >= 14 && i <= 20 && j >= 3 && j <= 8;
    const bool bar = j >= 5 && j <= 6 && i >= 8 && i <= 14;
    return left || right || bar;
  });
  REQUIRE(count_components(bridge, 0.5) == 1);

  const RasterField disk = rasterize(DomainSpec{}, 128);
  REQUIRE(count_components(disk, 0.5) == 1);
}

TEST_CASE("reflection symmetry holds within a one-pixel band") {
  const RasterField disk = rasterize(DomainSpec{}, 256);
  REQUIRE(symmetric_within_band(disk, 0.5, 0));
  REQUIRE(symmetric_within_band(disk, 0.5, 1));
  REQUIRE_THROWS_AS(symmetric_within_band(disk, 0.5, 2), InvalidInputError);

  // A lopsided blob breaks the vertical-mirror check.
  const auto lop = make_field(40, 40, 0.1, [](int i, int j) {
    return i >= 4 && i <= 18 && j >= 10 && j <= 30;
  });
  REQUIRE_FALSE(symmetric_within_band(lop, 0.5, 0));
  REQUIRE(symmetric_within_band(lop, 0.5, 1));
}

TEST_CASE("rasterized slit area sits inside the certified interval") {
  const DomainSpec slit = build_omega_eps(0.04, 12);
  const OmegaEpsMeasures m = omega_eps_measures(slit);
  const RasterField f = rasterize(slit, 1024);
  const double area = grid_area(f, 0.5);
  // Grid tolerance dominates the interval width by orders of magnitude.
  REQUIRE(area > m.area.lo - 0.005 * kPi);
  REQUIRE(area < m.area.hi + 0.005 * kPi);
}
