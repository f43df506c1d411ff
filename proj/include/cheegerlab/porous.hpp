#pragma once

// Porous-disk construction: hole sequences indexed by pairs (j1, j2),
// admissibility constraints, hole placement on shrinking rings, exact
// measures with geometric tail intervals, and the local boundary-density
// ratio near the rim.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "cheegerlab/domain.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/interval.hpp"

namespace cheegerlab {

// Admissibility constants: the hole radii must sum below 1/(2^8 + 1), decay
// at least geometrically with ratio 3/10 in eps, and obey r <= 2^{-18} eps^3.
inline constexpr double kSumRadiiBound = 1.0 / 257.0;
inline constexpr double kEpsFirstBound = 0.25;
inline constexpr double kEpsDecayRatio = 0.3;
inline constexpr int kRadiusCubeShift = -18;
inline constexpr double kDeltaBound = 1.0 / 128.0;  // 2^{-7}

struct SequenceParams {
  std::map<IndexPair, double> eps_of;
  std::map<IndexPair, double> r_of;

  // True when the entries are known to decay with ratio kEpsDecayRatio in
  // eps and kEpsDecayRatio^3 in r past the stored range, so series tails can
  // be bounded by geometric majorants.
  bool decay_certificate = false;
  double generator_eps1 = 0;
  double generator_safety = 0;
  int max_j1 = 0;

  bool has(IndexPair j) const { return eps_of.count(j) && r_of.count(j); }

  double eps(IndexPair j) const {
    const auto it = eps_of.find(j);
    if (it == eps_of.end()) {
      throw InvalidInputError("eps not stored for index (" +
                              std::to_string(j.j1) + "," +
                              std::to_string(j.j2) + ")");
    }
    return it->second;
  }

  double r(IndexPair j) const {
    const auto it = r_of.find(j);
    if (it == r_of.end()) {
      throw InvalidInputError("r not stored for index (" +
                              std::to_string(j.j1) + "," +
                              std::to_string(j.j2) + ")");
    }
    return it->second;
  }

  // Ring radius, angle, and hole center: the hole sits at distance eps_j
  // from the rim, at angle j2 * pi / (2 (j1 + 1)) in the first quadrant.
  double rho(IndexPair j) const { return 1.0 - eps(j); }
  double theta(IndexPair j) const {
    return static_cast<double>(j.j2) * kPi / (2.0 * (j.j1 + 1));
  }
  Point2 center(IndexPair j) const { return rho(j) * dir(theta(j)); }
};

// Default admissible sequences: eps decays by exactly the admissible ratio
// per successor step (computed iteratively so the decay check is bit-exact),
// and r saturates the cubic bound scaled by `safety`.
inline SequenceParams default_sequences(double eps1, double safety,
                                        int max_j1 = 16) {
  if (!(eps1 > 0.0) || !(eps1 < kEpsFirstBound)) {
    throw InvalidInputError("eps1 must lie in (0, 1/4)");
  }
  if (!(safety > 0.0) || safety > 1.0) {
    throw InvalidInputError("safety must lie in (0, 1]");
  }
  if (max_j1 < 1 || max_j1 > 64) {
    throw InvalidInputError("max_j1 must lie in [1, 64]");
  }
  SequenceParams seq;
  seq.decay_certificate = true;
  seq.generator_eps1 = eps1;
  seq.generator_safety = safety;
  seq.max_j1 = max_j1;

  double eps = eps1;
  double sum_r_lower = 0.0;
  IndexPair j{1, 1};
  while (j.j1 <= max_j1) {
    const double cube_bound = std::ldexp(eps * eps * eps, kRadiusCubeShift);
    const double r = safety * cube_bound;
    if (!(r > 0.0)) {
      throw DepthLimitError("hole radius underflowed at rank " +
                            std::to_string(index_rank(j)));
    }
    seq.eps_of[j] = eps;
    seq.r_of[j] = r;
    sum_r_lower += r;
    j = index_successor(j);
    eps = kEpsDecayRatio * eps;
  }
  if (!(sum_r_lower <= kSumRadiiBound)) {
    throw InvalidInputError(
        "parameters violate the radii-sum bound after tail summation");
  }
  return seq;
}

struct ConditionResult {
  std::string label;
  bool passed = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;

  bool all_passed() const {
    for (const auto& c : conditions)
      if (!c.passed) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : conditions)
      if (!c.passed) return c.label + ": " + c.detail;
    return {};
  }
};

namespace detail {

inline void merge_margin(ConditionResult& c, double margin,
                         const std::string& where) {
  if (margin < c.margin) {
    c.margin = margin;
    if (margin < 0) {
      c.passed = false;
      c.detail = "violated at " + where;
    }
  }
}

// Upper bound for sum of r_j over all entries past the given eps value,
// assuming the certified geometric decay (r_next <= 2^{-18} (0.3 eps)^3 and
// ratio 0.027 thereafter).
inline double radii_tail_upper(double eps_last) {
  const double eps_next = kEpsDecayRatio * eps_last;
  const double r_next = std::ldexp(eps_next * eps_next * eps_next,
                                   kRadiusCubeShift);
  const double q = kEpsDecayRatio * kEpsDecayRatio * kEpsDecayRatio;
  return r_next / (1.0 - q);
}

inline double radii_sq_tail_upper(double eps_last) {
  const double eps_next = kEpsDecayRatio * eps_last;
  const double r_next = std::ldexp(eps_next * eps_next * eps_next,
                                   kRadiusCubeShift);
  const double q = kEpsDecayRatio * kEpsDecayRatio * kEpsDecayRatio;
  return r_next * r_next / (1.0 - q * q);
}

// Distance between the true hole centers.  Realizing a center as a rounded
// point loses the rim distance once eps drops below half an ulp of 1, and
// two holes on the same ray would spuriously coincide; this form never
// subtracts nearly equal coordinates.  Angles j2*pi/(2(j1+1)) are equal as
// reals iff the integer cross products match, in which case the separation
// is purely radial.
inline double center_distance(const SequenceParams& seq, IndexPair a,
                              IndexPair b) {
  if (a.j2 * (b.j1 + 1) == b.j2 * (a.j1 + 1)) {
    return std::abs(seq.eps(a) - seq.eps(b));
  }
  const double dr = seq.eps(a) - seq.eps(b);
  const double s = std::sin(0.5 * (seq.theta(a) - seq.theta(b)));
  return std::sqrt(dr * dr + 4.0 * seq.rho(a) * seq.rho(b) * s * s);
}

}  // namespace detail

// Per-condition report over all indices with j1 <= N: the four admissibility
// constraints, the derived ring-gap inequality eps_j - 2 eps_{j+1} >=
// r_j + 2 r_{j+1}, and pairwise disjointness of the closed holes (by direct
// center-distance arithmetic).  Failures are carried in the report, never
// thrown.
inline ValidationReport validate_constraints(const SequenceParams& seq,
                                             int N) {
  if (N < 1) throw InvalidInputError("N must be at least 1");
  std::vector<IndexPair> idx;
  for (IndexPair j{1, 1}; j.j1 <= N; j = index_successor(j)) {
    if (!seq.has(j)) {
      throw InvalidInputError("sequence does not cover requested depth");
    }
    idx.push_back(j);
  }

  ValidationReport report;
  ConditionResult sum_r{"(i)", true,
                        std::numeric_limits<double>::infinity(),
                        "sum of radii vs 1/257"};
  ConditionResult eps_first{"(ii)", true,
                            std::numeric_limits<double>::infinity(),
                            "first eps vs 1/4"};
  ConditionResult eps_decay{"(iii)", true,
                            std::numeric_limits<double>::infinity(), ""};
  ConditionResult r_cube{"(iv)", true,
                         std::numeric_limits<double>::infinity(), ""};
  ConditionResult ring_gap{"ring-gap", true,
                           std::numeric_limits<double>::infinity(), ""};
  ConditionResult disjoint{"disjoint-closures", true,
                           std::numeric_limits<double>::infinity(), ""};

  double sum = 0;
  for (const auto& j : idx) sum += seq.r(j);
  double sum_upper = sum;
  if (seq.decay_certificate) {
    sum_upper += detail::radii_tail_upper(seq.eps(idx.back()));
  }
  sum_r.margin = kSumRadiiBound - sum_upper;
  if (!(sum_upper <= kSumRadiiBound)) {
    sum_r.passed = false;
    sum_r.detail = "radii sum exceeds 1/257";
  }
  if (!seq.decay_certificate) {
    sum_r.detail += " (truncated sum only; no decay certificate)";
  }

  eps_first.margin = kEpsFirstBound - seq.eps(IndexPair{1, 1});
  if (!(seq.eps(IndexPair{1, 1}) < kEpsFirstBound)) {
    eps_first.passed = false;
    eps_first.detail = "first eps not below 1/4";
  }

  for (size_t k = 0; k + 1 < idx.size(); ++k) {
    const IndexPair j = idx[k];
    const IndexPair jn = idx[k + 1];
    const std::string where =
        "(" + std::to_string(j.j1) + "," + std::to_string(j.j2) + ")";
    detail::merge_margin(eps_decay,
                         kEpsDecayRatio * seq.eps(j) - seq.eps(jn), where);
    detail::merge_margin(
        ring_gap,
        (seq.eps(j) - 2.0 * seq.eps(jn)) - (seq.r(j) + 2.0 * seq.r(jn)),
        where);
  }
  for (const auto& j : idx) {
    const double e = seq.eps(j);
    const std::string where =
        "(" + std::to_string(j.j1) + "," + std::to_string(j.j2) + ")";
    detail::merge_margin(r_cube, std::ldexp(e * e * e, kRadiusCubeShift) -
                                     seq.r(j),
                         where);
  }
  for (size_t a = 0; a < idx.size(); ++a) {
    for (size_t b = a + 1; b < idx.size(); ++b) {
      const double dist = detail::center_distance(seq, idx[a], idx[b]);
      const double gap = dist - (seq.r(idx[a]) + seq.r(idx[b]));
      detail::merge_margin(
          disjoint, gap,
          "(" + std::to_string(idx[a].j1) + "," +
              std::to_string(idx[a].j2) + ")-(" +
              std::to_string(idx[b].j1) + "," + std::to_string(idx[b].j2) +
              ")");
    }
  }
  if (!(disjoint.margin > 0)) {  // strict: touching closures overlap
    disjoint.passed = false;
    if (disjoint.detail.empty()) disjoint.detail = "closed holes touch";
  }

  report.conditions = {sum_r, eps_first, eps_decay, r_cube, ring_gap,
                       disjoint};
  return report;
}

// Unit disk minus the closed holes for indices start <= j with j1 <= N.
// Refuses sequences that fail validation.
inline DomainSpec build_omega0(const SequenceParams& seq, int N,
                               IndexPair start = IndexPair{1, 1}) {
  if (!start.valid()) throw InvalidInputError("invalid start index");
  const ValidationReport report = validate_constraints(seq, N);
  if (!report.all_passed()) {
    throw ConstraintViolationError("sequence failed validation at " +
                                   report.first_failure());
  }
  DomainSpec spec;
  spec.outer = Disk{{0.0, 0.0}, 1.0};
  spec.kind = ObstacleKind::holes;
  for (IndexPair j = start; j.j1 <= N; j = index_successor(j)) {
    spec.holes.push_back(Disk{seq.center(j), seq.r(j)});
  }
  if (seq.generator_eps1 > 0) {
    spec.porous_meta = PorousMeta{seq.generator_eps1, seq.generator_safety,
                                  N, start};
  }
  spec.truncation_note =
      "holes with j1 beyond " + std::to_string(N) +
      " are omitted; measures enclose the truncated contributions as "
      "intervals";
  return spec;
}

struct PorousReport {
  IntervalValue perimeter{0, 0};
  IntervalValue area{0, 0};
  IntervalValue delta_enclosure{0, 0};
  double delta = 0;          // upper end of the enclosure (safe for h_upper)
  bool delta_bound_ok = false;
  double h_upper = 0;        // 2 (1 + delta)
};

// Measures of the full (untruncated) porous domain, enclosed by intervals:
// the stored holes contribute exactly, the rest through the certified
// geometric tail.  delta = (1 + sum r) / (1 - sum r^2) - 1 drives the upper
// bound h <= 2 (1 + delta) on the perimeter-to-area ratio of the domain.
inline PorousReport porous_measures(const DomainSpec& spec,
                                    const SequenceParams& seq, int N) {
  if (spec.kind == ObstacleKind::cantor_bumps) {
    throw InvalidInputError("porous measures require a hole-type spec");
  }
  PorousReport out;
  if (spec.kind == ObstacleKind::none || spec.holes.empty()) {
    const auto dm = disk_measures(spec.outer);
    out.perimeter = IntervalValue{dm.perimeter, dm.perimeter};
    out.area = IntervalValue{dm.area, dm.area};
    out.delta = 0;
    out.delta_enclosure = IntervalValue{0, 0};
    out.delta_bound_ok = true;
    out.h_upper = 2.0;
    return out;
  }
  if (!seq.decay_certificate) {
    throw CertificationFailureError(
        "tail bounds unavailable: sequence carries no decay certificate");
  }
  if (N < 1 || seq.max_j1 < N) {
    throw InvalidInputError("sequence does not cover requested depth");
  }

  double sum_r = 0;
  double sum_r2 = 0;
  for (const auto& hole : spec.holes) {
    sum_r += hole.radius;
    sum_r2 += hole.radius * hole.radius;
  }
  // Deepest stored eps with j1 <= N bounds the truncated ranks.
  const double eps_last = seq.eps(IndexPair{N, N});
  const double tail_r = detail::radii_tail_upper(eps_last);
  const double tail_r2 = detail::radii_sq_tail_upper(eps_last);

  out.perimeter = IntervalValue{kTwoPi * (1.0 + sum_r),
                                kTwoPi * (1.0 + sum_r + tail_r)};
  out.area = IntervalValue{kPi * (1.0 - sum_r2 - tail_r2),
                           kPi * (1.0 - sum_r2)};
  // delta is increasing in both series, so the endpoints map to endpoints.
  out.delta_enclosure =
      IntervalValue{(1.0 + sum_r) / (1.0 - sum_r2) - 1.0,
                    (1.0 + sum_r + tail_r) / (1.0 - sum_r2 - tail_r2) - 1.0};
  out.delta = out.delta_enclosure.hi;
  out.delta_bound_ok = out.delta < kDeltaBound;
  out.h_upper = 2.0 * (1.0 + out.delta);
  return out;
}

// Relative perimeter of the domain inside the ball B_s(y) centered at a rim
// point y, divided by 2s.  Computed exactly from the arc/circle inventory of
// the spec: the rim contributes 4*asin(s/2); a hole circle at center
// distance d contributes its full length when engulfed, otherwise the arc
// 2 r acos((d^2 + r^2 - s^2) / (2 d r)).
inline double local_perimeter_ratio(const DomainSpec& spec, Point2 y,
                                    double s) {
  if (std::abs(y.norm() - 1.0) > 1e-9) {
    throw InvalidInputError("y must lie on the unit circle");
  }
  if (!(s > 0.0) || !(s < 1.0 / 16.0)) {
    throw InvalidInputError("s must lie in (0, 1/16)");
  }
  if (spec.kind == ObstacleKind::cantor_bumps) {
    throw InvalidInputError("local ratio requires a hole-type or empty spec");
  }
  double total = 4.0 * std::asin(0.5 * s);
  for (const auto& hole : spec.holes) {
    const double d = distance(hole.center, y);
    const double r = hole.radius;
    if (d >= s + r) continue;
    if (d + r <= s) {
      total += kTwoPi * r;
    } else if (d + s <= r) {
      continue;  // ball swallowed by the hole: no hole boundary inside
    } else {
      const double c = (d * d + r * r - s * s) / (2.0 * d * r);
      total += 2.0 * r * std::acos(std::clamp(c, -1.0, 1.0));
    }
  }
  return total / (2.0 * s);
}

}  // namespace cheegerlab
