#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "cheegerlab/errors.hpp"

namespace cheegerlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {s * x, s * y}; }
  Point2 operator-() const { return {-x, -y}; }

  double dot(const Point2& o) const { return x * o.x + y * o.y; }
  double cross(const Point2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }

  Point2 normalized() const {
    const double n = norm();
    if (n == 0.0) throw InvalidInputError("cannot normalize the zero vector");
    return {x / n, y / n};
  }

  // Rotation by +90 degrees.
  Point2 perp() const { return {-y, x}; }
};

inline Point2 operator*(double s, const Point2& p) { return p * s; }

inline double distance(const Point2& a, const Point2& b) {
  return (a - b).norm();
}

inline Point2 dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Angle of a nonzero vector, normalized to [0, 2*pi).
inline double angle_of(const Point2& p) {
  if (p.x == 0.0 && p.y == 0.0) {
    throw InvalidInputError("angle of the zero vector is undefined");
  }
  double a = std::atan2(p.y, p.x);
  if (a < 0) a += kTwoPi;
  return a;
}

inline double norm_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

// Unsigned angle between two nonzero directions, in [0, pi].
inline double angle_between(const Point2& u, const Point2& v) {
  const Point2 un = u.normalized();
  const Point2 vn = v.normalized();
  return std::acos(std::clamp(un.dot(vn), -1.0, 1.0));
}

struct Segment {
  Point2 a;
  Point2 b;
  double length() const { return distance(a, b); }
};

struct Disk {
  Point2 center;
  double radius = 1.0;

  bool contains(const Point2& p) const {
    return distance(p, center) < radius;
  }
};

struct DiskMeasures {
  double perimeter = 0.0;
  double area = 0.0;
};

inline DiskMeasures disk_measures(const Disk& d) {
  if (!(d.radius > 0.0) || !std::isfinite(d.radius)) {
    throw InvalidInputError("disk radius must be positive and finite");
  }
  return {kTwoPi * d.radius, kPi * d.radius * d.radius};
}

enum class Orientation { ccw, cw };

// Circular arc given by center, radius, the two boundary angles, and an
// explicit sweep direction (never inferred from the angle order). Angles are
// normalized to [0, 2*pi). Equal start and end angles denote a full circle.
struct CircularArc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  Orientation orientation = Orientation::ccw;

  double sweep() const {
    double d = orientation == Orientation::ccw ? end_angle - start_angle
                                               : start_angle - end_angle;
    d = std::fmod(d, kTwoPi);
    if (d < 0) d += kTwoPi;
    return d == 0.0 ? kTwoPi : d;
  }

  double angle_at(double t) const {
    const double s = orientation == Orientation::ccw ? sweep() : -sweep();
    return norm_angle(start_angle + t * s);
  }

  Point2 point_at(double t) const { return center + radius * dir(angle_at(t)); }
  Point2 start() const { return point_at(0.0); }
  Point2 end() const { return point_at(1.0); }
  double length() const { return radius * sweep(); }

  // Whether the (normalized) angle lies on the swept range, with slack for
  // boundary queries.
  bool contains_angle(double phi, double tol = 1e-12) const {
    double d = orientation == Orientation::ccw ? phi - start_angle
                                               : start_angle - phi;
    d = std::fmod(d, kTwoPi);
    if (d < 0) d += kTwoPi;
    return d <= sweep() + tol || d >= kTwoPi - tol;
  }

  // Unit tangent at an endpoint, pointing into the arc (direction of travel
  // at the start, reversed direction of travel at the end).
  Point2 tangent_into_arc(bool at_start) const {
    const double phi = at_start ? start_angle : angle_at(1.0);
    Point2 t = dir(phi).perp();  // ccw travel direction
    if (orientation == Orientation::cw) t = -t;
    if (!at_start) t = -t;
    return t;
  }
};

inline CircularArc make_arc(Point2 center, double radius, double start_angle,
                            double sweep, Orientation orientation) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidInputError("arc radius must be positive and finite");
  }
  if (!std::isfinite(start_angle) || !std::isfinite(sweep)) {
    throw InvalidInputError("arc angles must be finite");
  }
  if (sweep < 1e-12) {
    throw InvalidInputError("degenerate arc: sweep below 1e-12");
  }
  if (sweep > kTwoPi) {
    throw InvalidInputError("arc sweep exceeds a full turn");
  }
  CircularArc arc;
  arc.center = center;
  arc.radius = radius;
  arc.orientation = orientation;
  arc.start_angle = norm_angle(start_angle);
  const double signed_sweep =
      orientation == Orientation::ccw ? sweep : -sweep;
  arc.end_angle = norm_angle(start_angle + signed_sweep);
  return arc;
}

struct ArcMinResult {
  double min_dist = 0.0;
  double argmin_param = 0.0;  // in [0, 1]
};

// Minimum of |p| over the arc: exact endpoint evaluation plus a uniform dense
// parameter scan (default 4096 samples) with one local refinement pass around
// the best sample. Faithful to ~1e-12 for the arcs used here; endpoints win
// ties so that boundary minima report an endpoint parameter.
inline ArcMinResult arc_min_distance_to_origin(const CircularArc& arc,
                                               int samples = 4096) {
  if (samples < 2) throw InvalidInputError("need at least 2 samples");
  const auto dist2_at = [&arc](double t) { return arc.point_at(t).norm2(); };

  double best_t = 0.0;
  double best_d2 = dist2_at(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double d2 = dist2_at(t);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_t = t;
    }
  }
  // One refinement pass over the bracketing interval.
  const double h = 1.0 / samples;
  const double t_lo = std::max(0.0, best_t - h);
  const double t_hi = std::min(1.0, best_t + h);
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / samples;
    const double d2 = dist2_at(t);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_t = t;
    }
  }
  // Exact endpoints take precedence on ties.
  for (const double te : {0.0, 1.0}) {
    if (dist2_at(te) <= best_d2) {
      best_d2 = dist2_at(te);
      best_t = te;
    }
  }
  return {std::sqrt(best_d2), best_t};
}

namespace detail {
inline bool matches_endpoint(const CircularArc& arc, const Point2& p,
                             bool at_start, double tol) {
  return distance(p, at_start ? arc.start() : arc.end()) <= tol;
}
}  // namespace detail

// Angle in [0, pi] between the half-tangent pointing into the arc at one of
// its endpoints and the segment from that endpoint toward ray_to.
inline double endpoint_tangent_angle(const CircularArc& arc,
                                     const Point2& endpoint,
                                     const Point2& ray_to,
                                     double match_tol = 1e-7) {
  bool at_start;
  if (detail::matches_endpoint(arc, endpoint, true, match_tol)) {
    at_start = true;
  } else if (detail::matches_endpoint(arc, endpoint, false, match_tol)) {
    at_start = false;
  } else {
    throw InvalidInputError("point is not an endpoint of the arc");
  }
  const Point2 ray = ray_to - endpoint;
  if (ray.norm() == 0.0) {
    throw InvalidInputError("ray target coincides with the endpoint");
  }
  return angle_between(arc.tangent_into_arc(at_start), ray);
}

// Angle eta at endpoint p0 between the half-tangent into the arc and the
// chord p0 -> p, for p on the arc. Satisfies sin(eta) = |p - p0| / (2r)
// (inscribed-angle relation); that identity is validated by the test suite,
// not assumed here.
inline double chord_angle_eta(const CircularArc& arc, const Point2& p0,
                              const Point2& p, double match_tol = 1e-7) {
  bool at_start;
  if (detail::matches_endpoint(arc, p0, true, match_tol)) {
    at_start = true;
  } else if (detail::matches_endpoint(arc, p0, false, match_tol)) {
    at_start = false;
  } else {
    throw InvalidInputError("p0 is not an endpoint of the arc");
  }
  const double radial_err = std::abs(distance(p, arc.center) - arc.radius);
  if (radial_err > match_tol * std::max(1.0, arc.radius) ||
      !arc.contains_angle(angle_of(p - arc.center), 1e-7)) {
    throw InvalidInputError("p does not lie on the arc");
  }
  const Point2 chord = p - p0;
  if (chord.norm() == 0.0) {
    throw InvalidInputError("chord endpoints coincide");
  }
  return angle_between(arc.tangent_into_arc(at_start), chord);
}

}  // namespace cheegerlab
