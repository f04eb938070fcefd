#include "graphon/hilbert.hpp"

#include <array>
#include <cmath>
#include <string>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr int kMaxTotalBits = 62;

void check_geometry(int d, int bits) {
  if (d < 2) throw InvalidSpec("curve: dimension must be >= 2, got " + std::to_string(d));
  if (bits < 1) throw InvalidSpec("curve: bits must be >= 1, got " + std::to_string(bits));
  if (static_cast<long long>(d) * bits > kMaxTotalBits)
    throw InvalidSpec("curve: d*bits = " + std::to_string(static_cast<long long>(d) * bits) +
                      " exceeds the 62-bit index budget");
}

// Transpose form -> axes, in place.  X[i] holds the bits of axis i.
void transpose_to_axes(std::span<std::uint32_t> x, int bits) {
  const int n = static_cast<int>(x.size());
  // Gray decode.
  std::uint32_t t = x[n - 1] >> 1;
  for (int i = n - 1; i > 0; --i) x[i] ^= x[i - 1];
  x[0] ^= t;
  // Undo the per-level reflections/rotations, coarse to fine.
  const std::uint32_t top = std::uint32_t{2} << (bits - 1);
  for (std::uint32_t q = 2; q != top; q <<= 1) {
    const std::uint32_t p = q - 1;
    for (int i = n - 1; i >= 0; --i) {
      if (x[i] & q) {
        x[0] ^= p;  // invert low bits of axis 0
      } else {
        std::uint32_t swap = (x[0] ^ x[i]) & p;
        x[0] ^= swap;
        x[i] ^= swap;
      }
    }
  }
}

}  // namespace

CurveMap::CurveMap(int d, int b) : dim(d), bits(b) { check_geometry(d, b); }

void hilbert_cell_into(std::uint64_t index, int d, int bits, std::span<std::uint32_t> out) {
  check_geometry(d, bits);
  if (out.size() != static_cast<std::size_t>(d))
    throw DimensionMismatch("hilbert_cell: output buffer has wrong dimension");
  const unsigned total = static_cast<unsigned>(d) * static_cast<unsigned>(bits);
  if (total < 64 && index >> total)
    throw IndexOutOfRange("hilbert_cell: index " + std::to_string(index) +
                          " >= 2^" + std::to_string(total));

  // Distribute index bits across axes, most significant bit first: global
  // bit g lands in axis g mod d at level g / d.
  for (int i = 0; i < d; ++i) out[i] = 0;
  for (unsigned g = 0; g < total; ++g) {
    std::uint32_t bit = static_cast<std::uint32_t>((index >> (total - 1 - g)) & 1u);
    out[g % d] |= bit << (bits - 1 - static_cast<int>(g / d));
  }
  transpose_to_axes(out, bits);
}

std::vector<std::uint32_t> hilbert_cell(std::uint64_t index, int d, int bits) {
  std::vector<std::uint32_t> cell(static_cast<std::size_t>(d));
  hilbert_cell_into(index, d, bits, cell);
  return cell;
}

void map_point_into(double t, const CurveMap& curve, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(curve.dim))
    throw DimensionMismatch("map_point: output buffer has wrong dimension");
  if (t < 0.0) t = 0.0;
  if (t > 1.0) t = 1.0;
  const unsigned total = static_cast<unsigned>(curve.dim) * static_cast<unsigned>(curve.bits);
  std::uint64_t index = static_cast<std::uint64_t>(std::floor(std::ldexp(t, static_cast<int>(total))));
  const std::uint64_t last = curve.total_cells() - 1;
  if (index > last) index = last;

  std::array<std::uint32_t, kMaxTotalBits> cell{};
  hilbert_cell_into(index, curve.dim, curve.bits, std::span(cell.data(), curve.dim));
  for (int i = 0; i < curve.dim; ++i)
    out[i] = std::ldexp(static_cast<double>(cell[i]) + 0.5, -curve.bits);
}

Point map_point(double t, const CurveMap& curve) {
  Point p(static_cast<std::size_t>(curve.dim));
  map_point_into(t, curve, p);
  return p;
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(num), -log2_den); }

Dyadic preimage_length(std::span<const std::uint32_t> cell, int level, const CurveMap& curve) {
  check_geometry(curve.dim, level);
  if (cell.size() != static_cast<std::size_t>(curve.dim))
    throw DimensionMismatch("preimage_length: cell has wrong dimension");
  const std::uint32_t side = std::uint32_t{1} << level;
  for (std::size_t i = 0; i < cell.size(); ++i)
    if (cell[i] >= side)
      throw CellOutOfRange("preimage_length: coordinate " + std::to_string(cell[i]) +
                           " >= 2^" + std::to_string(level));

  const int d = curve.dim;
  const std::uint64_t n = std::uint64_t{1} << (static_cast<unsigned>(d) * static_cast<unsigned>(level));
  std::array<std::uint32_t, kMaxTotalBits> probe{};
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    hilbert_cell_into(idx, d, level, std::span(probe.data(), d));
    bool match = true;
    for (int i = 0; i < d; ++i)
      if (probe[static_cast<std::size_t>(i)] != cell[static_cast<std::size_t>(i)]) {
        match = false;
        break;
      }
    if (match) ++count;
  }
  return Dyadic{count, d * level};
}

}  // namespace graphon
