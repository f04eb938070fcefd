#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "graphon/graphon.hpp"

// Empirical Holder exponents by multi-scale oscillation scanning: at each
// scale s, sample pairs at separation ~s, record the largest observed value
// gap, and read the exponent off the log-log slope.  The recorded
// oscillation at s is the running maximum over all scales <= s, i.e. an
// estimate of the modulus of continuity sup_{|x-y|<=s} |f(x)-f(y)|, which is
// nondecreasing by construction.

namespace graphon {

struct CurveMap;

struct ScanBudget {
  std::vector<double> scales;  // strictly decreasing, in (0,1]; empty = default
  int n_per_scale = 2000;      // >= 100
  int threads = 0;             // 0 = GRAPHON_THREADS env, then hardware
};

// 2^-3 .. 2^-14, one scale per octave.
std::vector<double> default_scales();

struct HolderScanTable {
  std::vector<double> scales;        // decreasing
  std::vector<double> oscillations;  // modulus estimates, nondecreasing in scale
  int n_per_scale = 0;
  double alpha_hat = 0.0;  // log-log slope over the finest half of the scales
  double r2 = 0.0;         // fit quality on those points
  std::uint64_t seed = 0;
};

// |f(x) - f(y)| for the function under scan; the scan never needs f itself,
// only gaps, which lets vector-valued targets (curves) reuse the machinery.
using PairGap = std::function<double(std::span<const double>, std::span<const double>)>;

// Core scan over [0,1]^domain_dim.  Pairs at scale s have |x - y| uniform in
// (s/2, s].  Throws DegenerateFit when the modulus estimate is zero at the
// finest scales (constant functions land here).
HolderScanTable oscillation_scan(const PairGap& gap, int domain_dim, const ScanBudget& budget,
                                 std::uint64_t seed);

// Scan of W as a function on [0,1]^(2d).
HolderScanTable graphon_exponent(const Graphon& w, const ScanBudget& budget, std::uint64_t seed);

// Scan of t -> curve position with Euclidean gaps.  Scales finer than the
// per-axis cell width 2^-bits are dropped before scanning.
HolderScanTable curve_exponent(const CurveMap& curve, const ScanBudget& budget,
                               std::uint64_t seed);

// CSV with header scale,oscillation,n_pairs,alpha_hat,r2,seed (fit values
// repeated per row).  Returns bytes written; IoError on stream failure.
std::size_t write_holder_csv(const HolderScanTable& table, std::ostream& out);

}  // namespace graphon
