#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/rng.hpp"
#include "oracles.hpp"

using namespace cheegerlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("point algebra identities hold on random inputs") {
  Rng rng(101);
  for (int k = 0; k < 500; ++k) {
    const Point2 p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    REQUIRE_THAT(p.dot(q), WithinAbs(q.dot(p), 1e-15));
    REQUIRE_THAT(p.cross(q), WithinAbs(-q.cross(p), 1e-15));
    // Lagrange identity: dot^2 + cross^2 = |p|^2 |q|^2.
    REQUIRE_THAT(p.dot(q) * p.dot(q) + p.cross(q) * p.cross(q),
                 WithinRel(p.norm2() * q.norm2(), 1e-12));
    // perp is a quarter turn: same length, orthogonal, ccw of p.
    const Point2 t = p.perp();
    REQUIRE_THAT(t.norm(), WithinAbs(p.norm(), 1e-15));
    REQUIRE_THAT(t.dot(p), WithinAbs(0.0, 1e-12));
    REQUIRE(p.cross(t) >= 0.0);
    REQUIRE_THAT(distance(p, q), WithinAbs((p - q).norm(), 1e-15));
  }
}

TEST_CASE("direction vectors and angle normalization are mutually inverse") {
  Rng rng(102);
  for (int k = 0; k < 500; ++k) {
    const double theta = rng.uniform(-20.0, 20.0);
    const double n = norm_angle(theta);
    REQUIRE(n >= 0.0);
    REQUIRE(n < kTwoPi);
    REQUIRE_THAT(std::remainder(n - theta, kTwoPi), WithinAbs(0.0, 1e-9));
    REQUIRE_THAT(angle_of(dir(theta)), WithinAbs(n, 1e-9));
    // perp of a direction is the direction a quarter turn ahead.
    const Point2 ahead = dir(theta + 0.5 * kPi);
    REQUIRE_THAT(distance(dir(theta).perp(), ahead), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("angle_between is symmetric, bounded, and exact on known pairs") {
  Rng rng(103);
  for (int k = 0; k < 300; ++k) {
    const Point2 u = rng.uniform(0.1, 3.0) * dir(rng.uniform(0.0, kTwoPi));
    const Point2 v = rng.uniform(0.1, 3.0) * dir(rng.uniform(0.0, kTwoPi));
    const double a = angle_between(u, v);
    REQUIRE(a >= 0.0);
    REQUIRE(a <= kPi);
    REQUIRE_THAT(angle_between(v, u), WithinAbs(a, 1e-13));
    // Scaling either argument changes nothing.
    REQUIRE_THAT(angle_between(2.5 * u, 0.3 * v), WithinAbs(a, 1e-12));
  }
  REQUIRE_THAT(angle_between({1, 0}, {0, 2}), WithinAbs(0.5 * kPi, 1e-15));
  REQUIRE_THAT(angle_between({1, 0}, {-3, 0}), WithinAbs(kPi, 1e-15));
  REQUIRE_THAT(angle_between({1, 1}, {2, 2}), WithinAbs(0.0, 1e-7));
}

TEST_CASE("disk measures match the closed forms") {
  Rng rng(104);
  for (int k = 0; k < 100; ++k) {
    const double r = rng.uniform(0.01, 10.0);
    const auto m = disk_measures(Disk{{rng.uniform(-1, 1), 0.0}, r});
    REQUIRE_THAT(m.perimeter, WithinRel(kTwoPi * r, 1e-15));
    REQUIRE_THAT(m.area, WithinRel(kPi * r * r, 1e-15));
  }
}

TEST_CASE("make_arc rejects degenerate inputs") {
  REQUIRE_THROWS_AS(make_arc({0, 0}, 0.0, 0.0, 1.0, Orientation::ccw),
                    InvalidInputError);
  REQUIRE_THROWS_AS(make_arc({0, 0}, -1.0, 0.0, 1.0, Orientation::ccw),
                    InvalidInputError);
  REQUIRE_THROWS_AS(
      make_arc({0, 0}, std::nan(""), 0.0, 1.0, Orientation::ccw),
      InvalidInputError);
  REQUIRE_THROWS_AS(make_arc({0, 0}, 1.0, 0.0, 1e-13, Orientation::ccw),
                    InvalidInputError);
  REQUIRE_THROWS_AS(make_arc({0, 0}, 1.0, 0.0, kTwoPi + 1e-6,
                             Orientation::ccw),
                    InvalidInputError);
  REQUIRE_THROWS_AS(
      make_arc({0, 0}, 1.0, std::nan(""), 1.0, Orientation::ccw),
      InvalidInputError);
}

TEST_CASE("full-turn arcs close up exactly") {
  const CircularArc arc = make_arc({0.3, -0.2}, 1.7, 0.4, kTwoPi,
                                   Orientation::ccw);
  REQUIRE_THAT(arc.sweep(), WithinAbs(kTwoPi, 1e-12));
  REQUIRE_THAT(arc.length(), WithinRel(kTwoPi * 1.7, 1e-12));
  REQUIRE_THAT(distance(arc.start(), arc.end()), WithinAbs(0.0, 1e-12));
}

TEST_CASE("arc parametrization traces the stated sweep in both orientations") {
  Rng rng(105);
  for (int k = 0; k < 300; ++k) {
    const Point2 c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double r = rng.uniform(0.05, 2.0);
    const double start = rng.uniform(0.0, kTwoPi);
    const double sweep = rng.uniform(0.05, kTwoPi - 0.2);
    const Orientation o = rng.coin() ? Orientation::ccw : Orientation::cw;
    const CircularArc arc = make_arc(c, r, start, sweep, o);

    REQUIRE_THAT(arc.sweep(), WithinAbs(sweep, 1e-12));
    REQUIRE_THAT(arc.length(), WithinRel(r * sweep, 1e-12));
    for (const double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
      const Point2 p = arc.point_at(t);
      REQUIRE_THAT(distance(p, c), WithinRel(r, 1e-12));
      REQUIRE(arc.contains_angle(angle_of(p - c), 1e-9));
      const double expected =
          o == Orientation::ccw ? start + t * sweep : start - t * sweep;
      REQUIRE_THAT(std::remainder(arc.angle_at(t) - expected, kTwoPi),
                   WithinAbs(0.0, 1e-9));
    }
    // The midpoint of the complementary arc is never contained.
    const double mid_out = o == Orientation::ccw
                               ? start + sweep + 0.5 * (kTwoPi - sweep)
                               : start - sweep - 0.5 * (kTwoPi - sweep);
    REQUIRE_FALSE(arc.contains_angle(norm_angle(mid_out), 1e-9));
  }
}

TEST_CASE("endpoint tangents match forward differences of the parametrization") {
  Rng rng(106);
  const double dt = 1e-7;
  for (int k = 0; k < 200; ++k) {
    const Point2 c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double r = rng.uniform(0.1, 2.0);
    const CircularArc arc = make_arc(
        c, r, rng.uniform(0.0, kTwoPi), rng.uniform(0.3, 3.0),
        rng.coin() ? Orientation::ccw : Orientation::cw);

    const Point2 fwd = arc.point_at(dt) - arc.point_at(0.0);
    const Point2 ts = arc.tangent_into_arc(true);
    REQUIRE_THAT(ts.norm(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(distance((1.0 / fwd.norm()) * fwd, ts), WithinAbs(0.0, 1e-5));

    const Point2 bwd = arc.point_at(1.0 - dt) - arc.point_at(1.0);
    const Point2 te = arc.tangent_into_arc(false);
    REQUIRE_THAT(te.norm(), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(distance((1.0 / bwd.norm()) * bwd, te), WithinAbs(0.0, 1e-5));
  }
}

TEST_CASE("arc minimum distance agrees with a dense independent scan") {
  Rng rng(107);
  for (int k = 0; k < 150; ++k) {
    const Point2 c = rng.uniform(0.0, 2.0) * dir(rng.uniform(0.0, kTwoPi));
    const double r = rng.uniform(0.05, 1.5);
    const CircularArc arc = make_arc(
        c, r, rng.uniform(0.0, kTwoPi), rng.uniform(0.05, kTwoPi),
        rng.coin() ? Orientation::ccw : Orientation::cw);
    const ArcMinResult got = arc_min_distance_to_origin(arc);
    const double want = oracle::brute_force_arc_min(arc);
    REQUIRE_THAT(got.min_dist, WithinAbs(want, 1e-9));
    // The reported parameter reproduces the reported distance.
    REQUIRE_THAT(arc.point_at(got.argmin_param).norm(),
                 WithinAbs(got.min_dist, 1e-9));
  }
}

TEST_CASE("arc minimum reports an endpoint when endpoints tie") {
  // Window symmetric about the far direction: both endpoints are nearest.
  const CircularArc arc =
      make_arc({2.0, 0.0}, 0.5, -0.25 * kPi, 0.5 * kPi, Orientation::ccw);
  const ArcMinResult mn = arc_min_distance_to_origin(arc);
  const bool at_endpoint = mn.argmin_param == 0.0 || mn.argmin_param == 1.0;
  REQUIRE(at_endpoint);
  REQUIRE_THAT(mn.min_dist, WithinAbs(arc.start().norm(), 1e-12));
}

TEST_CASE("arc minimum finds interior minima") {
  // Arc facing the origin: minimum at the inward point, distance |c| - r.
  const CircularArc arc =
      make_arc({1.0, 0.0}, 0.6, 0.5 * kPi, kPi, Orientation::ccw);
  const ArcMinResult mn = arc_min_distance_to_origin(arc);
  REQUIRE_THAT(mn.min_dist, WithinAbs(0.4, 1e-9));
  REQUIRE_THAT(mn.argmin_param, WithinAbs(0.5, 1e-3));
}

TEST_CASE("endpoint tangent angle on the first-quadrant quarter arc") {
  const CircularArc arc =
      make_arc({0.0, 0.0}, 1.0, 0.0, 0.5 * kPi, Orientation::ccw);
  // At (1, 0) the inward half-tangent points straight up; the segment
  // toward the origin points left: a right angle.
  REQUIRE_THAT(endpoint_tangent_angle(arc, {1.0, 0.0}, {0.0, 0.0}),
               WithinAbs(0.5 * kPi, 1e-12));
  // The segment toward (1, 1) is the tangent itself: angle zero.
  REQUIRE_THAT(endpoint_tangent_angle(arc, {1.0, 0.0}, {1.0, 1.0}),
               WithinAbs(0.0, 1e-12));
  // Same queries at the other endpoint (0, 1) by symmetry.
  REQUIRE_THAT(endpoint_tangent_angle(arc, {0.0, 1.0}, {0.0, 0.0}),
               WithinAbs(0.5 * kPi, 1e-12));

  REQUIRE_THROWS_AS(endpoint_tangent_angle(arc, {0.9, 0.0}, {0.0, 0.0}),
                    InvalidInputError);
  REQUIRE_THROWS_AS(endpoint_tangent_angle(arc, {1.0, 0.0}, {1.0, 0.0}),
                    InvalidInputError);
}

TEST_CASE("chord angle satisfies the inscribed-angle relation") {
  Rng rng(108);
  for (int k = 0; k < 200; ++k) {
    const Point2 c{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double r = rng.uniform(0.1, 1.5);
    const CircularArc arc = make_arc(
        c, r, rng.uniform(0.0, kTwoPi), rng.uniform(0.5, 3.0),
        rng.coin() ? Orientation::ccw : Orientation::cw);
    const Point2 p0 = arc.start();
    double prev = 0.0;
    for (const double t : {0.02, 0.05, 0.1, 0.2}) {
      const Point2 p = arc.point_at(t);
      const double eta = chord_angle_eta(arc, p0, p);
      REQUIRE_THAT(std::sin(eta), WithinAbs(distance(p, p0) / (2.0 * r), 1e-9));
      REQUIRE(eta > prev);  // monotone in the separation
      prev = eta;
    }
  }
}
