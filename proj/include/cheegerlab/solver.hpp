#pragma once

// Cheeger-ratio minimization on raster fields: a Dinkelbach outer iteration
// h_{n+1} = P(E_n)/|E_n| around an inner convex problem
//   minimize  TV(u) - h * integral(u)  over u in [0,1] supported in the mask,
// solved by a first-order primal-dual method, followed by thresholding.
//
// Two length functionals appear, deliberately.  The penalty h is always the
// forward-difference TV ratio of a thresholded set — the exact functional
// the inner problem minimizes — so the penalized energy of that set is zero
// and the inner minimizer can never collapse to u == 0.  The reported
// h_estimate and history measures use the subpixel marching-squares contour
// of the same sets, which tracks the continuum values far more accurately
// but may undercut the discrete TV constant and therefore must never drive
// the penalty.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/raster.hpp"

namespace cheegerlab {

enum class ThresholdMode { fixed, scan };
enum class SeedMode { full_domain, warm_start };

struct CheegerConfig {
  double outer_tol = 1e-4;   // stop when |h_{n+1} - h_n| < outer_tol
  int max_outer = 40;
  int inner_iters = 350;     // base inner budget; grows per outer step
  double inner_tol = 1e-6;   // relative primal-dual gap target
  ThresholdMode threshold_mode = ThresholdMode::scan;
  double threshold_level = 0.5;  // used when threshold_mode == fixed
  int threshold_levels = 17;     // used when threshold_mode == scan
  SeedMode seed_mode = SeedMode::full_domain;
  const RasterField* warm_start_field = nullptr;
  double step_asymmetry = 3.0;   // primal/dual step ratio of the inner solver
  bool multiscale = true;
  int coarse_limit = 200;        // grid width at which coarsening stops
  double inner_growth = 1.4;     // budget growth factor per outer step
  int inner_iters_cap = 6000;

  void validate() const {
    if (!(outer_tol > 0)) throw InvalidInputError("outer_tol must be > 0");
    if (max_outer < 1) throw InvalidInputError("max_outer must be >= 1");
    if (inner_iters < 10) throw InvalidInputError("inner_iters must be >= 10");
    if (!(inner_tol >= 0)) throw InvalidInputError("inner_tol must be >= 0");
    if (!(threshold_level > 0) || !(threshold_level < 1)) {
      throw InvalidInputError("threshold_level must lie in (0, 1)");
    }
    if (threshold_levels < 1) {
      throw InvalidInputError("threshold_levels must be >= 1");
    }
    if (!(step_asymmetry > 0)) {
      throw InvalidInputError("step_asymmetry must be > 0");
    }
    if (seed_mode == SeedMode::warm_start && warm_start_field == nullptr) {
      throw InvalidInputError("warm_start seed requires a field");
    }
  }
};

struct OuterIterate {
  double h = 0;
  double perimeter = 0;
  double area = 0;
};

struct CheegerResult {
  double h_estimate = 0;
  // Final relaxed field restricted to the mask.  Thresholding it at
  // threshold_used recovers the measured set: ratio_of(indicator,
  // threshold_used) reproduces (ratio, and the final history row) exactly.
  RasterField indicator;
  std::vector<OuterIterate> history;
  double ratio = 0;       // P/A of the final thresholded set
  double threshold_used = 0.5;
  bool converged = false;
};

struct RatioMeasures {
  double perimeter = 0;
  double area = 0;
  double ratio = 0;
};

// Perimeter/area/ratio of the thresholded set of a field.
inline RatioMeasures ratio_of(const RasterField& field, double threshold) {
  RatioMeasures m;
  m.area = grid_area(field, threshold);
  if (!(m.area > 0)) {
    throw DegenerateThresholdError(
        "thresholded set is empty at level " + std::to_string(threshold));
  }
  m.perimeter = grid_perimeter(field, threshold);
  m.ratio = m.perimeter / m.area;
  return m;
}

namespace detail {

// Per-row active windows.  The raster margin keeps the mask away from the
// grid border, so inside a window every neighbor load is in bounds; pixels
// outside the dual window can never acquire a nonzero gradient or dual
// value and are skipped entirely.
struct RowSpans {
  std::vector<int> mask_lo, mask_hi;  // mask pixels of row j in [lo, hi)
  std::vector<int> dual_lo, dual_hi;  // pixels whose forward diff can be != 0
};

inline RowSpans make_row_spans(const std::vector<std::uint8_t>& mask, int nx,
                               int ny) {
  RowSpans s;
  s.mask_lo.assign(ny, 0);
  s.mask_hi.assign(ny, 0);
  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    int lo = nx, hi = 0;
    for (int i = 0; i < nx; ++i) {
      if (mask[row + i]) {
        lo = std::min(lo, i);
        hi = i + 1;
      }
    }
    s.mask_lo[j] = lo < hi ? lo : 0;
    s.mask_hi[j] = lo < hi ? hi : 0;
  }
  s.dual_lo.assign(ny, 0);
  s.dual_hi.assign(ny, 0);
  for (int j = 0; j < ny; ++j) {
    // The dual cell at (i, j) touches u at (i, j), (i+1, j), (i, j+1).
    int lo = nx, hi = 0;
    if (s.mask_lo[j] < s.mask_hi[j]) {
      lo = std::min(lo, s.mask_lo[j] - 1);
      hi = std::max(hi, s.mask_hi[j]);
    }
    if (j + 1 < ny && s.mask_lo[j + 1] < s.mask_hi[j + 1]) {
      lo = std::min(lo, s.mask_lo[j + 1]);
      hi = std::max(hi, s.mask_hi[j + 1]);
    }
    s.dual_lo[j] = lo < hi ? std::max(lo, 0) : 0;
    s.dual_hi[j] = lo < hi ? std::min(hi, nx - 1) : 0;
  }
  return s;
}

// Row kernels, branch-free so the compiler can vectorize them.  The
// projection scale is exactly 1 when |xi| <= 1 (sqrt(1) == 1), and
// multiplying the primal update by the 0/1 mask pins u to zero outside the
// domain, so the iterates match the branchy textbook form bit for bit.
// All pointers are row-based and point into distinct arrays.
inline void pd_dual_row(const double* __restrict ub, int nx, int lo, int hi,
                        double sigma, double* __restrict xp,
                        double* __restrict yp) {
  for (int i = lo; i < hi; ++i) {
    const double uc = ub[i];
    const double dx = ub[i + 1] - uc;
    const double dy = ub[i + nx] - uc;
    const double xx = xp[i] + sigma * dx;
    const double yy = yp[i] + sigma * dy;
    const double mag2 = xx * xx + yy * yy;
    // Value ternary (not std::max) so the select vectorizes.
    const double inv = 1.0 / std::sqrt(mag2 > 1.0 ? mag2 : 1.0);
    xp[i] = xx * inv;
    yp[i] = yy * inv;
  }
}

inline void pd_primal_row(const std::uint8_t* __restrict mp, int lo, int hi,
                          int nx, double tau, double c,
                          const double* __restrict xp,
                          const double* __restrict yp, double* __restrict up,
                          double* __restrict ubp) {
  for (int i = lo; i < hi; ++i) {
    const double m = mp[i];
    const double div = xp[i] - xp[i - 1] + yp[i] - yp[i - nx];
    double v = up[i] + tau * (div + c);
    v = v < 0.0 ? 0.0 : v;
    v = v > 1.0 ? 1.0 : v;
    const double unew = m * v;
    ubp[i] = 2.0 * unew - up[i];
    up[i] = unew;
  }
}

// One primal-dual inner solve of  min_u TV(u) - c * sum(u),  u in [0,1]
// supported in the mask; u, xix, xiy persist across calls (warm start).
// Stops early when the primal-dual gap drops below gap_target.  The dual
// and primal sweeps are fused with a one-row lag: the dual row j only reads
// ubar rows j and j+1 (not yet overwritten this sweep) and the primal row
// j-1 only reads dual rows j-2..j-1 (already updated), so the iterates
// match the textbook two-sweep scheme exactly while streaming memory once.
inline int pd_inner_solve(const std::vector<std::uint8_t>& mask, int nx,
                          int ny, double c, int iters, double gap_target,
                          double beta, std::vector<double>& u,
                          std::vector<double>& xix, std::vector<double>& xiy,
                          const RowSpans& spans) {
  const double sqrt8 = std::sqrt(8.0);
  const double tau = beta / sqrt8;
  const double sigma = 1.0 / (beta * sqrt8);
  const int check_every = 25;

  std::vector<double> ubar = u;
  const double* ub = ubar.data();
  double* xp = xix.data();
  double* yp = xiy.data();

  const auto dual_row = [&](int j) {
    pd_dual_row(ub + static_cast<std::size_t>(j) * nx, nx, spans.dual_lo[j],
                spans.dual_hi[j], sigma,
                xp + static_cast<std::size_t>(j) * nx,
                yp + static_cast<std::size_t>(j) * nx);
  };
  double* up = u.data();
  double* ubp = ubar.data();
  const std::uint8_t* mp = mask.data();
  const auto primal_row = [&](int j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    pd_primal_row(mp + row, spans.mask_lo[j], spans.mask_hi[j], nx, tau, c,
                  xp + row, yp + row, up + row, ubp + row);
  };

  int used = 0;
  for (int it = 1; it <= iters; ++it) {
    ++used;
    for (int j = 0; j < ny; ++j) {
      dual_row(j);
      if (j > 0) primal_row(j - 1);
    }
    primal_row(ny - 1);
    if (it % check_every == 0 || it == iters) {
      double primal = 0;
      double dual = 0;
      for (int j = 0; j < ny; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * nx;
        for (int i = spans.dual_lo[j]; i < spans.dual_hi[j]; ++i) {
          const std::size_t at = row + i;
          const double uc = u[at];
          const double dx = u[at + 1] - uc;
          const double dy = u[at + nx] - uc;
          primal += std::sqrt(dx * dx + dy * dy) - c * uc;
        }
        for (int i = spans.mask_lo[j]; i < spans.mask_hi[j]; ++i) {
          const std::size_t at = row + i;
          if (!mask[at]) continue;
          const double div = xp[at] - xp[at - 1] + yp[at] - yp[at - nx];
          dual += std::min(0.0, -div - c);
        }
      }
      if (primal - dual <= gap_target) break;
    }
  }
  return used;
}

// 2x2 mean-pooling (ceil division on odd edges); pooled mask is the union of
// child masks so no domain pixel is lost.
inline RasterField pool_half(const RasterField& f) {
  RasterField c;
  c.nx = (f.nx + 1) / 2;
  c.ny = (f.ny + 1) / 2;
  c.pixel = 2.0 * f.pixel;
  c.origin = f.origin;
  c.excluded = f.excluded;
  c.values.assign(static_cast<std::size_t>(c.nx) * c.ny, 0.0);
  c.mask.assign(c.values.size(), 0);
  for (int j = 0; j < c.ny; ++j) {
    for (int i = 0; i < c.nx; ++i) {
      double sum = 0;
      int count = 0;
      bool any = false;
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          const int fi = 2 * i + di;
          const int fj = 2 * j + dj;
          if (fi >= f.nx || fj >= f.ny) continue;
          const std::size_t fat = f.idx(fi, fj);
          sum += f.values[fat];
          any = any || f.mask[fat] != 0;
          ++count;
        }
      }
      const std::size_t at = c.idx(i, j);
      c.values[at] = count > 0 ? sum / count : 0.0;
      c.mask[at] = any ? 1 : 0;
    }
  }
  // Pooling halves the unmasked margin, and once it reaches zero two
  // invariants break at once: the row-span kernels assume every masked
  // pixel's neighbors are in bounds, and a level set touching the border
  // hides part of its boundary from the forward-difference TV (a set
  // filling the whole grid measures perimeter zero).  Re-embed with a
  // one-pixel clear ring whenever the pooled mask reaches the border.
  bool border = false;
  for (int i = 0; i < c.nx && !border; ++i) {
    border = c.mask[c.idx(i, 0)] != 0 || c.mask[c.idx(i, c.ny - 1)] != 0;
  }
  for (int j = 0; j < c.ny && !border; ++j) {
    border = c.mask[c.idx(0, j)] != 0 || c.mask[c.idx(c.nx - 1, j)] != 0;
  }
  if (!border) return c;
  RasterField p;
  p.nx = c.nx + 2;
  p.ny = c.ny + 2;
  p.pixel = c.pixel;
  p.origin = Point2{c.origin.x - c.pixel, c.origin.y - c.pixel};
  p.excluded = c.excluded;
  p.values.assign(static_cast<std::size_t>(p.nx) * p.ny, 0.0);
  p.mask.assign(p.values.size(), 0);
  for (int j = 0; j < c.ny; ++j) {
    const std::size_t src = static_cast<std::size_t>(j) * c.nx;
    const std::size_t dst = static_cast<std::size_t>(j + 1) * p.nx + 1;
    std::copy_n(c.values.begin() + src, c.nx, p.values.begin() + dst);
    std::copy_n(c.mask.begin() + src, c.nx, p.mask.begin() + dst);
  }
  return p;
}

struct Seed {
  std::vector<double> u;
  double h0 = 0;
};

// Ratio of a thresholded set measured with the same forward-difference
// isotropic total variation the inner solver minimizes.  Penalties must come
// from this functional: a subpixel contour measurement can undercut the
// discrete TV constant, and a penalty below that constant makes u == 0 the
// unique inner minimizer, collapsing the field.  With c = (this ratio) * px
// the thresholded set itself has penalized energy exactly zero.
inline RatioMeasures binary_tv_ratio(const RasterField& field,
                                     double threshold) {
  RatioMeasures m;
  std::size_t count = 0;
  double tv = 0;
  const int nx = field.nx;
  for (int j = 0; j + 1 < field.ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    for (int i = 0; i + 1 < nx; ++i) {
      const std::size_t at = row + i;
      const bool c0 = field.values[at] >= threshold;
      const bool cx = field.values[at + 1] >= threshold;
      const bool cy = field.values[at + nx] >= threshold;
      count += c0;
      const int dx = (cx != c0) ? 1 : 0;
      const int dy = (cy != c0) ? 1 : 0;
      if (dx | dy) tv += (dx & dy) ? std::numbers::sqrt2 : 1.0;
    }
  }
  m.area = static_cast<double>(count) * field.pixel * field.pixel;
  m.perimeter = tv * field.pixel;
  m.ratio = m.area > 0 ? m.perimeter / m.area : 0.0;
  return m;
}

// One threshold level of the relaxed field, carrying both measurements: the
// TV ratio drives the outer iteration, the subpixel contour measures are
// what the result reports.
struct LevelPick {
  bool found = false;
  double t = 0.5;
  RatioMeasures ms;      // marching-squares subpixel measures (reported)
  double tv_ratio = 0;   // forward-difference TV ratio (drives the penalty)
  double tv_area = 0;
};

// The penalty tracker lives in TV units (it must match the inner
// functional); the report tracker follows the subpixel measurement, which
// orders near-optimal sets more finely than the TV metric can resolve.
struct PenaltyBest {
  double tv_ratio = std::numeric_limits<double>::infinity();
  double tv_area = 0;
};

struct ReportBest {
  RatioMeasures ms{0, 0, std::numeric_limits<double>::infinity()};
  double threshold = 0.5;
  std::vector<double> u;
};

// Scan thresholds on the relaxed field, keeping the best TV ratio with ties
// broken toward larger area (preferring maximal minimizers).
inline LevelPick scan_thresholds(const RasterField& relaxed,
                                 const CheegerConfig& cfg) {
  std::vector<double> levels;
  if (cfg.threshold_mode == ThresholdMode::fixed) {
    levels.push_back(cfg.threshold_level);
  } else if (cfg.threshold_levels == 1) {
    levels.push_back(0.5);
  } else {
    for (int k = 0; k < cfg.threshold_levels; ++k) {
      levels.push_back(0.1 + 0.8 * k / (cfg.threshold_levels - 1));
    }
  }
  LevelPick pick;
  for (const double t : levels) {
    const RatioMeasures tv = binary_tv_ratio(relaxed, t);
    // A positive-area set with zero TV fills the grid to the border and
    // shows no boundary at all; its ratio 0 is an artifact, not a
    // candidate, and would pin the Dinkelbach penalty at zero.
    if (!(tv.area > 0) || !(tv.perimeter > 0)) continue;
    const double tie = 1e-9 * std::max(1.0, std::abs(pick.tv_ratio));
    if (!pick.found || tv.ratio < pick.tv_ratio - tie ||
        (tv.ratio <= pick.tv_ratio + tie && tv.area > pick.tv_area)) {
      pick.found = true;
      pick.t = t;
      pick.tv_ratio = tv.ratio;
      pick.tv_area = tv.area;
      pick.ms = ratio_of(relaxed, t);
    }
  }
  return pick;
}

inline CheegerResult solve_impl(const RasterField& field,
                                const CheegerConfig& cfg, Seed seed);

// Coarse-to-fine seeding: solve a 2x2-pooled copy, then upsample its relaxed
// field onto the fine mask and measure its ratio for the starting h.
inline Seed multiscale_seed(const RasterField& field,
                            const CheegerConfig& cfg) {
  RasterField coarse = pool_half(field);
  CheegerConfig ccfg = cfg;
  ccfg.warm_start_field = nullptr;
  ccfg.seed_mode = SeedMode::full_domain;
  CheegerResult cres = solve_impl(coarse, ccfg, Seed{});
  Seed seed;
  seed.u.assign(field.size(), 0.0);
  // Bilinear upsample of the coarse relaxed values: block replication (or a
  // hard 0/1 set) would hand marching squares a piecewise-constant field
  // whose level sets staircase at the block scale and overstate the
  // perimeter by 10-25%; a smooth ramp keeps the seed's contour (and hence
  // h0) at the coarse optimum.
  const auto coarse_at = [&](int ci, int cj) {
    ci = std::clamp(ci, 0, cres.indicator.nx - 1);
    cj = std::clamp(cj, 0, cres.indicator.ny - 1);
    return cres.indicator.values[cres.indicator.idx(ci, cj)];
  };
  // pool_half may have re-embedded the coarse grid with a clear ring; the
  // origin shift says by how many coarse cells the indices moved.
  const int pad = static_cast<int>(
      std::lround((field.origin.x - coarse.origin.x) / coarse.pixel));
  for (int j = 0; j < field.ny; ++j) {
    const double cy = (j - 0.5) / 2.0 + pad;
    const int j0 = static_cast<int>(std::floor(cy));
    const double fy = cy - j0;
    for (int i = 0; i < field.nx; ++i) {
      const std::size_t at = field.idx(i, j);
      if (!field.mask[at]) continue;
      const double cx = (i - 0.5) / 2.0 + pad;
      const int i0 = static_cast<int>(std::floor(cx));
      const double fx = cx - i0;
      const double v =
          (1 - fy) * ((1 - fx) * coarse_at(i0, j0) + fx * coarse_at(i0 + 1, j0)) +
          fy * ((1 - fx) * coarse_at(i0, j0 + 1) + fx * coarse_at(i0 + 1, j0 + 1));
      seed.u[at] = v;
    }
  }
  // The caller scans the seed field itself for the starting penalty; only
  // guard against a collapsed coarse stage here.
  bool any = false;
  for (const double v : seed.u) {
    if (v > 0) {
      any = true;
      break;
    }
  }
  if (!any) seed.u.assign(field.values.begin(), field.values.end());
  seed.h0 = binary_tv_ratio(field, 0.5).ratio;
  return seed;
}

inline CheegerResult solve_impl(const RasterField& field,
                                const CheegerConfig& cfg, Seed seed) {
  const int nx = field.nx;
  const int ny = field.ny;
  if (seed.u.empty()) {
    if (cfg.multiscale && nx > cfg.coarse_limit) {
      seed = multiscale_seed(field, cfg);
    } else if (cfg.seed_mode == SeedMode::warm_start) {
      const RasterField& w = *cfg.warm_start_field;
      if (w.nx != nx || w.ny != ny) {
        throw InvalidInputError("warm start grid does not match the field");
      }
      seed.u.assign(field.size(), 0.0);
      for (std::size_t k = 0; k < field.size(); ++k) {
        if (field.mask[k]) seed.u[k] = std::clamp(w.values[k], 0.0, 1.0);
      }
      seed.h0 = binary_tv_ratio(w, 0.5).ratio;
    } else {
      // Full-domain seed: u = coverage on the mask, h0 = the coverage
      // field's own TV ratio (a genuine set ratio in the inner functional).
      seed.u.assign(field.values.begin(), field.values.end());
      seed.h0 = binary_tv_ratio(field, 0.5).ratio;
    }
  }

  std::size_t mask_count = 0;
  for (const auto m : field.mask) mask_count += m != 0;

  CheegerResult result;

  std::vector<double> u = std::move(seed.u);
  std::vector<double> xix(field.size(), 0.0);
  std::vector<double> xiy(field.size(), 0.0);
  const RowSpans spans = make_row_spans(field.mask, nx, ny);

  RasterField relaxed = field;  // reuse grid geometry; values overwritten

  // The seed field is itself a candidate: scan it before any inner sweep so
  // Dinkelbach starts at (and the answer never falls behind) the best set it
  // already encodes.  A coarse-to-fine seed often IS the minimizer.
  PenaltyBest best;
  ReportBest report;
  double h = seed.h0;
  const auto offer = [&](const LevelPick& pick,
                         const std::vector<double>& snapshot) {
    if (pick.tv_ratio < best.tv_ratio ||
        (pick.tv_ratio == best.tv_ratio && pick.tv_area > best.tv_area)) {
      best.tv_ratio = pick.tv_ratio;
      best.tv_area = pick.tv_area;
    }
    if (pick.ms.ratio < report.ms.ratio ||
        (pick.ms.ratio == report.ms.ratio && pick.ms.area > report.ms.area)) {
      report.ms = pick.ms;
      report.threshold = pick.t;
      report.u = snapshot;
    }
  };
  relaxed.values.assign(u.begin(), u.end());
  if (const LevelPick sp = scan_thresholds(relaxed, cfg); sp.found) {
    h = std::min(h, sp.tv_ratio);
    offer(sp, u);
    result.history.push_back(OuterIterate{h, sp.ms.perimeter, sp.ms.area});
  } else {
    result.history.push_back(OuterIterate{seed.h0, 0, 0});
  }
  if (!(h > 0)) {
    throw DegenerateThresholdError(
        "seed produces no nonempty thresholded set");
  }

  double inner_budget = cfg.inner_iters;
  int stall = 0;
  int iters_since_improve = 0;
  int fixed_hits = 0;
  // A stalled ratio only certifies the fixed point once the field has had a
  // real chance to move away from it.
  constexpr int kStallIterFloor = 2000;
  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    const double c = h * field.pixel;
    const double gap_target =
        cfg.inner_tol * std::max(1.0, c * static_cast<double>(mask_count));
    const int budget_now = static_cast<int>(inner_budget);
    const int used_iters =
        pd_inner_solve(field.mask, nx, ny, c, budget_now, gap_target,
                       cfg.step_asymmetry, u, xix, xiy, spans);
    // A budget-limited sweep leaves the field smeared; its thresholded ratio
    // is not evidence about the fixed point, only about the budget.
    const bool inner_resolved =
        used_iters < budget_now || budget_now >= cfg.inner_iters_cap;
    if (std::getenv("CHEEGERLAB_TRACE")) {
      std::fprintf(stderr, "[trace] nx=%d outer=%d h=%.8f used=%d/%d\n", nx,
                   outer, h, used_iters, budget_now);
    }
    inner_budget = std::min<double>(inner_budget * cfg.inner_growth,
                                    cfg.inner_iters_cap);

    relaxed.values.assign(u.begin(), u.end());
    const LevelPick pick = scan_thresholds(relaxed, cfg);
    if (!pick.found) {
      if (!inner_resolved) continue;  // smeared field; retry with more budget
      if (report.u.empty()) {
        throw DegenerateThresholdError(
            "all thresholds produced an empty set at outer step " +
            std::to_string(outer) + " (h = " + std::to_string(h) + ")");
      }
      // Fixed point: with the penalty at the best set's own ratio even the
      // relaxed minimizer is empty, so that ratio already matches the grid
      // constant and the last snapshot is the answer.
      result.history.push_back(
          OuterIterate{h, report.ms.perimeter, report.ms.area});
      result.converged = true;
      break;
    }
    // Every TV ratio comes from a genuine pixel set, hence sits at or above
    // the discrete constant; never move the penalty back up when a noisy
    // intermediate field thresholds badly.  The history records the penalty
    // sequence actually used (monotone by construction) alongside the
    // subpixel measures of the set each step selected.
    const double h_next = std::min(h, pick.tv_ratio);
    result.history.push_back(
        OuterIterate{h_next, pick.ms.perimeter, pick.ms.area});
    const bool improved = pick.tv_ratio < best.tv_ratio - cfg.outer_tol;
    offer(pick, u);
    // Fixed point: the selected set's ratio equals the penalty that produced
    // it.  Trust it immediately when the inner solve resolved; otherwise
    // demand a confirmation visit at a grown budget.
    if (std::abs(pick.tv_ratio - h) < cfg.outer_tol) {
      ++fixed_hits;
      if (inner_resolved || fixed_hits >= 2) {
        result.converged = true;
        break;
      }
    } else {
      fixed_hits = 0;
    }
    h = h_next;
    // Three stalled steps in a row mean the fixed point is resolved to
    // within the outer tolerance, provided enough inner iterations have
    // accumulated since the last improvement for the plateau to be evidence
    // rather than a budget artifact.
    if (improved) {
      stall = 0;
      iters_since_improve = 0;
    } else {
      ++stall;
      iters_since_improve += used_iters;
    }
    if (stall >= 3 &&
        (iters_since_improve >= kStallIterFloor || inner_resolved)) {
      result.converged = true;
      break;
    }
  }

  if (report.u.empty()) {
    throw DegenerateThresholdError(
        "no outer step produced a nonempty thresholded set");
  }
  result.h_estimate = report.ms.ratio;
  result.ratio = report.ms.ratio;
  result.threshold_used = report.threshold;
  result.indicator = field;
  result.indicator.values = std::move(report.u);
  return result;
}

}  // namespace detail

inline CheegerResult solve_cheeger(const RasterField& field,
                                   const CheegerConfig& cfg) {
  cfg.validate();
  bool any_mask = false;
  for (const auto m : field.mask) {
    if (m) {
      any_mask = true;
      break;
    }
  }
  if (!any_mask) throw InvalidInputError("field has an empty mask");
  // The fused sweeps read one pixel past the mask in each direction.
  for (int i = 0; i < field.nx; ++i) {
    if (field.mask[field.idx(i, 0)] ||
        field.mask[field.idx(i, field.ny - 1)]) {
      throw InvalidInputError("mask must not touch the grid border");
    }
  }
  for (int j = 0; j < field.ny; ++j) {
    if (field.mask[field.idx(0, j)] ||
        field.mask[field.idx(field.nx - 1, j)]) {
      throw InvalidInputError("mask must not touch the grid border");
    }
  }
  return detail::solve_impl(field, cfg, detail::Seed{});
}

// |E delta Omega| / |Omega| on the grid, the numerical certificate that the
// domain is (close to) its own Cheeger set.  Omega is the raster mask, E the
// indicator thresholded at the level the solver measured it with.
inline double minimality_gap(const CheegerResult& result,
                             const DomainSpec& spec) {
  (void)spec;  // the grid mask already encodes the rasterized domain
  const RasterField& ind = result.indicator;
  if (ind.size() == 0) throw InvalidInputError("result has no indicator");
  std::size_t mask_count = 0;
  std::size_t sym_diff = 0;
  for (std::size_t k = 0; k < ind.size(); ++k) {
    const bool in_domain = ind.mask[k] != 0;
    const bool in_set = ind.values[k] >= result.threshold_used;
    mask_count += in_domain;
    sym_diff += in_domain != in_set;
  }
  if (mask_count == 0) throw InvalidInputError("domain mask is empty");
  return static_cast<double>(sym_diff) / static_cast<double>(mask_count);
}

}  // namespace cheegerlab
