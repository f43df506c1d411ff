#pragma once

// Fat-slit construction: iterative middle-gap removal on a symmetric segment,
// plus the circular-arc bump family that exactly fills the removed gaps, with
// exact measures and rigorous truncation-tail bounds.

#include <cmath>
#include <string>
#include <vector>

#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/interval.hpp"

namespace cheegerlab {

// Parameter range for which the downstream certified claims are proved; the
// construction itself works for any epsilon in (0, 1), so values outside the
// range produce a warning rather than an error.
inline constexpr double kSlitEpsilonCertifiedMax = 1.0 / 24.0;

// Each level doubles the segment count; past this depth the materialized
// structure would exceed the memory budget.
inline constexpr int kMaxSlitDepth = 24;

// Product depth used for the residual-set length enclosure reported by the
// domain measures; at this depth the enclosure width is below 1e-12 * epsilon.
inline constexpr int kResidualLengthProductDepth = 40;

struct GapRecord {
  int level = 0;        // removal step i >= 1
  long index = 0;       // 1-based position within the level
  double midpoint = 0;  // abscissa of the gap center
  double half_length = 0;
};

// State of the middle-gap removal after `depth` steps on [-epsilon, epsilon].
// `segments` are the surviving closed subintervals (on the x-axis);
// `gaps` are all removed open gaps for levels 1..depth.
struct CantorStructure {
  double epsilon = 0;
  int depth = 0;
  std::vector<Segment> segments;
  std::vector<GapRecord> gaps;
  std::vector<std::string> warnings;

  double total_segment_length() const {
    double s = 0;
    for (const auto& seg : segments) s += seg.b.x - seg.a.x;
    return s;
  }
};

// Half-lengths delta_i of the gaps removed at each level i = 1..N.  At step i
// the surviving length L_{i-1} loses the fraction 2^{-i}, spread over 2^{i-1}
// gaps, so delta_i = 2^{-2i} * L_{i-1} and L_i = L_{i-1} * (1 - 2^{-i}).
inline std::vector<double> slit_gap_half_lengths(double epsilon, int N) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInputError("epsilon must be positive and finite");
  }
  if (N < 1) throw InvalidInputError("depth must be at least 1");
  std::vector<double> deltas;
  deltas.reserve(static_cast<size_t>(N));
  double length = 2.0 * epsilon;
  for (int i = 1; i <= N; ++i) {
    const double delta = std::ldexp(length, -2 * i);
    if (delta <= 0.0) {
      throw DepthLimitError("gap half-length underflowed at level " +
                            std::to_string(i));
    }
    deltas.push_back(delta);
    length *= 1.0 - std::ldexp(1.0, -i);
  }
  return deltas;
}

// Surviving length 2*epsilon * prod_{k=1..N} (1 - 2^{-k}).
inline double slit_partial_length(double epsilon, int N) {
  double length = 2.0 * epsilon;
  for (int k = 1; k <= N; ++k) length *= 1.0 - std::ldexp(1.0, -k);
  return length;
}

inline CantorStructure cantor_iterate(double epsilon, int N) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInputError("epsilon must be positive and finite");
  }
  if (N < 1) throw InvalidInputError("depth must be at least 1");
  if (N > kMaxSlitDepth) {
    throw DepthLimitError("depth " + std::to_string(N) +
                          " exceeds the materialization limit of " +
                          std::to_string(kMaxSlitDepth));
  }

  CantorStructure out;
  out.epsilon = epsilon;
  out.depth = N;
  if (epsilon >= kSlitEpsilonCertifiedMax) {
    out.warnings.push_back(
        "epsilon outside the certified range (0, 1/24); construction "
        "proceeds but downstream guarantees may not apply");
  }

  const std::vector<double> deltas = slit_gap_half_lengths(epsilon, N);

  // Segment endpoints as abscissa pairs; start with the full slit.
  std::vector<std::pair<double, double>> segs{{-epsilon, epsilon}};
  out.gaps.reserve((1ull << N) - 1);
  for (int i = 1; i <= N; ++i) {
    const double delta = deltas[static_cast<size_t>(i - 1)];
    std::vector<std::pair<double, double>> next;
    next.reserve(segs.size() * 2);
    long gap_index = 0;
    for (const auto& [a, b] : segs) {
      const double mid = 0.5 * (a + b);
      const double left_len = (mid - delta) - a;
      const double right_len = b - (mid + delta);
      if (!(left_len > 0.0) || !(right_len > 0.0)) {
        throw DepthLimitError("segment length underflowed at level " +
                              std::to_string(i));
      }
      out.gaps.push_back({i, ++gap_index, mid, delta});
      next.emplace_back(a, mid - delta);
      next.emplace_back(mid + delta, b);
    }
    segs = std::move(next);
  }

  out.segments.reserve(segs.size());
  for (const auto& [a, b] : segs) {
    out.segments.push_back({Point2{a, 0.0}, Point2{b, 0.0}});
  }
  return out;
}

// Encloses the residual length 2*epsilon * prod_{k>=1} (1 - 2^{-k}).
// hi is the partial product at N; lo multiplies in a rigorous lower bound
// for the tail of the log-sum: log(1-x) >= -x/(1-x) gives
//   sum_{k>N} log(1 - 2^{-k}) >= -2^{-N} / (1 - 2^{-(N+1)}).
inline IntervalValue fat_cantor_length(double epsilon, int N) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInputError("epsilon must be nonnegative and finite");
  }
  if (N < 1) throw InvalidInputError("depth must be at least 1");
  if (epsilon == 0.0) return IntervalValue{0.0, 0.0};
  const double hi = slit_partial_length(epsilon, N);
  const double tail_log_lower =
      -std::ldexp(1.0, -N) / (1.0 - std::ldexp(1.0, -(N + 1)));
  const double lo = hi * std::exp(tail_log_lower);
  return IntervalValue{lo, hi};
}

// Bump profile: height 1 - sqrt(1 - (|x| - delta)^2) on (-delta, delta),
// zero outside.  The graph consists of unit-radius circular arcs, so the
// profile is 1-Lipschitz.
inline double bump_profile(double delta, double x) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidInputError("delta must be positive and finite");
  }
  const double u = std::abs(x) - delta;
  if (u >= 0.0) return 0.0;
  return 1.0 - std::sqrt(1.0 - u * u);
}

inline double bump_height(double delta) { return bump_profile(delta, 0.0); }

struct BumpSpec {
  double delta = 0;
  double midpoint = 0;
};

struct BumpMeasures {
  double perimeter = 0;
  double area = 0;
};

// The bump region (mirrored across the x-axis) is bounded by four unit-radius
// arcs with centers (+-delta, +-1); each arc subtends the angle asin(delta).
//   perimeter = 4*asin(delta)
//   area      = 4*delta - 2*delta*sqrt(1-delta^2) - 2*asin(delta)
// The closed-form area cancels catastrophically for small delta, so a power
// series (error below 1e-16 relative for delta < 0.01) takes over there.
inline BumpMeasures bump_measures(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta) || delta > 0.5) {
    throw InvalidInputError("delta must be in (0, 1/2]");
  }
  const double perimeter = 4.0 * std::asin(delta);
  double area;
  if (delta < 0.01) {
    const double d2 = delta * delta;
    area = delta * d2 *
           (2.0 / 3.0 + d2 * (0.1 + d2 * (1.0 / 28.0 + d2 * (5.0 / 288.0))));
  } else {
    area = 4.0 * delta - 2.0 * delta * std::sqrt(1.0 - delta * delta) -
           2.0 * std::asin(delta);
  }
  return {perimeter, area};
}

// Rigorous elementary bounds used by the truncation-tail intervals:
// from u^2/2 <= 1 - sqrt(1-u^2) <= u^2 the bump area lies in
// [(2/3) delta^3, (4/3) delta^3]; from x <= asin(x) <= x/sqrt(1-x^2) the
// perimeter lies in [4 delta, 4 delta / sqrt(1 - delta^2)].
inline IntervalValue bump_area_bounds(double delta) {
  if (!(delta >= 0.0) || delta > 0.5) {
    throw InvalidInputError("delta must be in [0, 1/2]");
  }
  const double d3 = delta * delta * delta;
  return IntervalValue{(2.0 / 3.0) * d3, (4.0 / 3.0) * d3};
}

inline IntervalValue bump_perimeter_bounds(double delta) {
  if (!(delta >= 0.0) || delta > 0.5) {
    throw InvalidInputError("delta must be in [0, 1/2]");
  }
  return IntervalValue{4.0 * delta,
                       4.0 * delta / std::sqrt(1.0 - delta * delta)};
}

}  // namespace cheegerlab
