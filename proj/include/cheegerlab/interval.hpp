#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

// Closed enclosure [lo, hi] of a real quantity. Used to carry the truncation
// error of infinite constructions (series and product tails). The arithmetic
// below does not direct floating-point rounding: enclosed widths of interest
// are far above one ulp, and the README documents this convention.
struct IntervalValue {
  double lo = 0.0;
  double hi = 0.0;

  IntervalValue() = default;
  // NOLINTNEXTLINE(google-explicit-constructor): points promote to intervals.
  IntervalValue(double point) : lo(point), hi(point) { validate(); }
  IntervalValue(double lo_, double hi_) : lo(lo_), hi(hi_) { validate(); }

  void validate() const {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
      throw InvalidInputError("IntervalValue requires finite lo <= hi");
    }
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const IntervalValue& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

inline IntervalValue operator+(const IntervalValue& a, const IntervalValue& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline IntervalValue operator-(const IntervalValue& a, const IntervalValue& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

inline IntervalValue operator*(double s, const IntervalValue& a) {
  return s >= 0 ? IntervalValue{s * a.lo, s * a.hi}
                : IntervalValue{s * a.hi, s * a.lo};
}

// True when every value of a lies strictly below every value of b.
inline bool strictly_below(const IntervalValue& a, const IntervalValue& b) {
  return a.hi < b.lo;
}

inline std::ostream& operator<<(std::ostream& os, const IntervalValue& v) {
  return os << "[" << v.lo << ", " << v.hi << "]";
}

}  // namespace cheegerlab
