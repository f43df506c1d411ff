#pragma once

// Domain descriptions shared by both counterexample constructions: a unit
// disk minus either a family of slit bumps or a list of circular holes,
// plus exact measures with truncation-tail intervals for the slit domain.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cheegerlab/cantor.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/interval.hpp"

namespace cheegerlab {

enum class ObstacleKind { none, cantor_bumps, holes };

// Index pair (j1, j2) with 1 <= j2 <= j1, ordered lexicographically.  The
// successor walks each block j1 = const in j2, then opens the next block.
struct IndexPair {
  int j1 = 1;
  int j2 = 1;

  bool valid() const { return j1 >= 1 && j2 >= 1 && j2 <= j1; }
  bool operator==(const IndexPair& o) const {
    return j1 == o.j1 && j2 == o.j2;
  }
  bool operator!=(const IndexPair& o) const { return !(*this == o); }
  bool operator<(const IndexPair& o) const {
    return j1 != o.j1 ? j1 < o.j1 : j2 < o.j2;
  }
  bool operator<=(const IndexPair& o) const { return *this < o || *this == o; }
};

inline IndexPair index_successor(IndexPair j) {
  if (!j.valid()) throw InvalidInputError("invalid index pair");
  return j.j2 == j.j1 ? IndexPair{j.j1 + 1, 1} : IndexPair{j.j1, j.j2 + 1};
}

// 1-based position in the successor order.
inline long index_rank(IndexPair j) {
  if (!j.valid()) throw InvalidInputError("invalid index pair");
  return static_cast<long>(j.j1) * (j.j1 - 1) / 2 + j.j2;
}

inline IndexPair index_from_rank(long rank) {
  if (rank < 1) throw InvalidInputError("rank must be positive");
  int j1 = 1;
  long block_start = 1;
  while (block_start + j1 <= rank) {
    block_start += j1;
    ++j1;
  }
  return IndexPair{j1, static_cast<int>(rank - block_start + 1)};
}

// Generator parameters recorded on hole-type specs built from the default
// sequences, so serialized specs can be re-measured with tail certificates.
struct PorousMeta {
  double eps1 = 0;
  double safety = 1;
  int depth = 0;
  IndexPair start{1, 1};
};

struct DomainSpec {
  Disk outer{{0.0, 0.0}, 1.0};
  ObstacleKind kind = ObstacleKind::none;
  CantorStructure cantor;    // when kind == cantor_bumps
  std::vector<Disk> holes;   // when kind == holes
  std::optional<PorousMeta> porous_meta;
  std::string truncation_note;
};

// Unit disk minus one bump per removed gap (bump half-width = gap
// half-length, so each bump exactly fills its gap).  Levels beyond N are
// truncated; measures carry the truncation as intervals.
inline DomainSpec build_omega_eps(double epsilon, int N) {
  DomainSpec spec;
  spec.outer = Disk{{0.0, 0.0}, 1.0};
  spec.kind = ObstacleKind::cantor_bumps;
  spec.cantor = cantor_iterate(epsilon, N);
  spec.truncation_note =
      "bump levels beyond depth " + std::to_string(N) +
      " are omitted; measures enclose the truncated contributions as "
      "intervals";
  return spec;
}

struct OmegaEpsMeasures {
  IntervalValue perimeter{0, 0};
  IntervalValue area{0, 0};
  IntervalValue topo_boundary_h1{0, 0};
  IntervalValue cantor_gap{0, 0};
};

namespace detail {

// Tail of the level sums over i > N, enclosed rigorously.
//
// Level i contributes 2^{i-1} bumps of half-width delta_i = 2^{-2i} L_{i-1},
// where L_i is the surviving slit length (decreasing, with limit enclosed by
// fat_cantor_length).  Using the elementary bump bounds:
//   perimeter tail in [2^{1-N} L_inf,  2^{1-N} L_N / sqrt(1 - delta_{N+1}^2)]
//   area tail      in [(2/3) L_inf^3, (4/3) L_N^3] * 2^{-5N-6} * 32/31
struct SlitTails {
  IntervalValue perimeter;
  IntervalValue area;
};

inline SlitTails slit_tail_bounds(double epsilon, int N) {
  const double L_N = slit_partial_length(epsilon, N);
  const double L_lo = fat_cantor_length(epsilon, N).lo;
  const double delta_next = std::ldexp(L_N, -2 * (N + 1));
  const double K = 1.0 / std::sqrt(1.0 - delta_next * delta_next);
  const double geom = std::ldexp(1.0, 1 - N);
  IntervalValue per{geom * L_lo, geom * L_N * K};

  const double cube_lo = L_lo * L_lo * L_lo;
  const double cube_hi = L_N * L_N * L_N;
  const double factor = std::ldexp(32.0 / 31.0, -5 * N - 6);
  IntervalValue area{(2.0 / 3.0) * cube_lo * factor,
                     (4.0 / 3.0) * cube_hi * factor};
  per.validate();
  area.validate();
  return {per, area};
}

}  // namespace detail

// Measures of the slit-bump domain (the untruncated object), enclosed by
// intervals: perimeter misses the residual slit set, whose length is
// reported separately as cantor_gap, so the topological boundary measure
// exceeds the perimeter by exactly that gap.  Throws a certification
// failure if the truncation tails are too wide to separate the two.
inline OmegaEpsMeasures omega_eps_measures(const DomainSpec& spec) {
  if (spec.kind == ObstacleKind::none) {
    const auto dm = disk_measures(spec.outer);
    return {IntervalValue{dm.perimeter, dm.perimeter},
            IntervalValue{dm.area, dm.area},
            IntervalValue{dm.perimeter, dm.perimeter}, IntervalValue{0, 0}};
  }
  if (spec.kind != ObstacleKind::cantor_bumps) {
    throw InvalidInputError(
        "slit-domain measures require a bump-type or empty spec");
  }
  const double epsilon = spec.cantor.epsilon;
  const int N = spec.cantor.depth;

  double bump_perimeter = 0;
  double bump_area = 0;
  const std::vector<double> deltas = slit_gap_half_lengths(epsilon, N);
  for (int i = 1; i <= N; ++i) {
    const double count = std::ldexp(1.0, i - 1);
    const auto bm = bump_measures(deltas[static_cast<size_t>(i - 1)]);
    bump_perimeter += count * bm.perimeter;
    bump_area += count * bm.area;
  }

  const auto tails = detail::slit_tail_bounds(epsilon, N);
  OmegaEpsMeasures out;
  out.perimeter = IntervalValue{kTwoPi + bump_perimeter + tails.perimeter.lo,
                                kTwoPi + bump_perimeter + tails.perimeter.hi};
  out.area = IntervalValue{kPi - bump_area - tails.area.hi,
                           kPi - bump_area - tails.area.lo};
  out.cantor_gap = fat_cantor_length(epsilon, kResidualLengthProductDepth);
  out.topo_boundary_h1 = out.perimeter + out.cantor_gap;
  out.perimeter.validate();
  out.area.validate();

  if (!(out.cantor_gap.lo > 0.0) ||
      !(out.topo_boundary_h1.lo > out.perimeter.hi)) {
    throw CertificationFailureError(
        "truncation tails too wide to certify the strict boundary-measure "
        "inequality; rebuild with a larger depth");
  }
  return out;
}

}  // namespace cheegerlab
