#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphon/point.hpp"

// d-dimensional Hilbert curve on a 2^bits grid per axis, as an exact map
// from curve indices to cells.  The index <-> cell correspondence is the
// bit-transpose Gray-code construction: interleave the index bits across
// axes, Gray-decode, then undo the per-level rotations with mask arithmetic.
// Everything is integer; there is nothing to round.
//
// Orientation is pinned by the depth-1 square: indices 0..3 in d = 2 visit
// (0,0), (0,1), (1,1), (1,0).  Index 0 maps to the origin cell in every
// dimension.

namespace graphon {

struct CurveMap {
  int dim;   // d >= 2
  int bits;  // per-axis resolution B >= 1, with d*B <= 62

  CurveMap(int d, int b);  // throws InvalidSpec on bad arguments

  std::uint64_t total_cells() const {
    return std::uint64_t{1} << (static_cast<unsigned>(dim) * static_cast<unsigned>(bits));
  }

  // Which variant of the many Hilbert-curve conventions this is.
  static constexpr const char* convention = "transpose-gray";
};

// Cell visited by curve index `index` on the level-`bits` grid.
// Throws IndexOutOfRange unless index < 2^(d*bits).
std::vector<std::uint32_t> hilbert_cell(std::uint64_t index, int d, int bits);

// Allocation-free variant; out must have size d.
void hilbert_cell_into(std::uint64_t index, int d, int bits, std::span<std::uint32_t> out);

// t in [0,1] -> center of the cell whose index interval contains t:
// index = min(floor(t * 2^(d*bits)), 2^(d*bits) - 1).  Each coordinate is
// within 2^-(bits+1) of the exact curve position.
Point map_point(double t, const CurveMap& curve);
void map_point_into(double t, const CurveMap& curve, std::span<double> out);

// Exact dyadic rational num / 2^log2_den.
struct Dyadic {
  std::uint64_t num = 0;
  int log2_den = 0;

  Dyadic normalized() const {
    Dyadic r = *this;
    while (r.log2_den > 0 && (r.num & 1u) == 0 && r.num != 0) {
      r.num >>= 1;
      --r.log2_den;
    }
    if (r.num == 0) r.log2_den = 0;
    return r;
  }
  double value() const;
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    Dyadic x = a.normalized(), y = b.normalized();
    return x.num == y.num && x.log2_den == y.log2_den;
  }
};

// Total length of { t : the level-`level` cell of t equals `cell` },
// computed by enumerating all 2^(d*level) index intervals.  This is the
// measure-preservation check in executable form: it does not assume the
// index map is a bijection, it counts.  Cost is O(2^(d*level)), so keep
// `level` modest.  Throws CellOutOfRange if a coordinate is >= 2^level.
Dyadic preimage_length(std::span<const std::uint32_t> cell, int level, const CurveMap& curve);

}  // namespace graphon
