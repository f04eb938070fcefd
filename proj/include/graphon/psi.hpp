#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graphon/graphon.hpp"
#include "graphon/point.hpp"

// Estimation of the equivalence invariant
//   Psi_q(W) = E_{x,y} [ D(x,y)^(-q) ],   D(x,y) = E_z |W(x,z) - W(y,z)|,
// through its truncated version T(delta) = E[ D^(-q) ; D > delta ] on a
// decreasing delta grid.  Whether T saturates or keeps climbing as delta
// shrinks is what separates kernels that are genuinely smooth from ones that
// only look smooth after a change of variables.

namespace graphon {

struct InnerDistanceEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // Monte Carlo standard error of `value`
  int n_z = 0;           // inner samples actually used
};

// D(x,y) by Monte Carlo over z.  A bitwise-equal pair gives exactly 0 / 0.
InnerDistanceEstimate inner_distance(const Graphon& w, const Point& x, const Point& y, int n_z,
                                     std::uint64_t seed);

struct PsiBudget {
  int n_pairs = 20000;  // outer (x,y) pairs
  int n_z = 1000;       // inner z samples per pair
  int threads = 0;      // 0 = GRAPHON_THREADS env, then hardware
};

enum class PsiVerdictKind { Finite, Divergent, DegenerateZero };

const char* to_string(PsiVerdictKind kind);

struct PsiVerdict {
  PsiVerdictKind kind = PsiVerdictKind::Finite;
  // Finite: truncated value at the smallest delta plus the fitted remainder.
  double psi_estimate = 0.0;
  double psi_stderr = 0.0;
  // Slope of log T against log(1/delta) on the finest grid points, with its
  // weighted-least-squares error (filled whenever the fit ran).
  double log_slope = 0.0;
  double slope_stderr = 0.0;
};

struct PsiPoint {
  double delta = 0.0;
  double t_value = 0.0;
  double t_stderr = 0.0;
  std::int64_t n_retained = 0;  // pairs with D > delta
};

struct TruncatedPsiResult {
  double q = 0.0;
  std::vector<PsiPoint> points;  // in grid order (delta decreasing)
  double zero_mass = 0.0;        // fraction of pairs with D <= smallest delta
  PsiVerdict verdict;
  int n_pairs = 0;
  int n_z = 0;
  std::uint64_t seed = 0;
};

// The estimator.  delta_grid must be strictly decreasing and positive
// (BadGrid otherwise); q must be positive.  Throws InsufficientSamples when
// fewer than 30 pairs clear the largest delta and the zero-mass gate did not
// already decide the verdict.
TruncatedPsiResult psi_truncated(const Graphon& w, double q, std::span<const double> delta_grid,
                                 const PsiBudget& budget, std::uint64_t seed);

// psi_truncated on the standard grid 1e-1 .. 1e-4 (7 geometric points).
std::vector<double> default_delta_grid();
TruncatedPsiResult classify_divergence(const Graphon& w, double q, const PsiBudget& budget,
                                       std::uint64_t seed);

// Closed form for the d = 1 dot-product kernel with a = 1, valid for
// 0 < q < 1:  Psi_q = 2^q * 2 / ((1-q)(2-q)).  DomainError outside.
double psi_analytic_dot1(double q);

// Mean of |u . z| over z uniform in [0,1]^d.
double mean_abs_projection(std::span<const double> u, int n_z, std::uint64_t seed);

// Minimum of mean_abs_projection over unit directions: canonical sign
// patterns (+-1,...)/sqrt(d), the coordinate axes, and n_dirs random
// directions, all sharing one z sample.
struct CdEstimate {
  int d = 0;
  double value = 0.0;
  Point direction;
  int n_dirs = 0;
  int n_z = 0;
  std::uint64_t seed = 0;
};

CdEstimate estimate_cd(int d, int n_dirs, int n_z, std::uint64_t seed);

// CSV with header q,delta,t_value,t_stderr,n_pairs_retained,n_z,seed,verdict
// and one row per grid point.  Returns bytes written; throws IoError on a
// failed stream.
std::size_t write_psi_csv(const TruncatedPsiResult& result, std::ostream& out);

}  // namespace graphon
