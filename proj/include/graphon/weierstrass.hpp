#pragma once

#include <cstdint>
#include <span>

// Lacunary cosine series h(t) = sum_{k=0..K} 2^{-k*alpha} * cos(2*pi*2^k*t)
// and the quantities built from it.  h is 1-periodic and even; for
// alpha in (0,1) it is Holder(alpha) and nowhere better, which is what makes
// it useful as a worst-case smooth kernel ingredient.

namespace graphon {

struct WeierstrassParams {
  int d = 2;            // coordinate dimension of the kernel built on h
  double alpha = 0.5;   // Holder exponent, in (0,1) for kernels
  double a = 0.0;       // amplitude; <= safe_amplitude(alpha, d) keeps range in [0,1]
  int k = 0;            // truncation order, >= 0
};

// Largest amplitude for which 1/2 + a * sum_i h(x_i - y_i) stays inside
// [0,1]: (1 - 2^{-alpha}) / (2d).
double safe_amplitude(double alpha, int d);

// Tail of the K-truncated kernel against the full series:
// a * d * 2^{-(K+1)alpha} / (1 - 2^{-alpha}).
double truncation_tail(double alpha, int d, double a, int k);

// Smallest K whose truncation_tail is <= tol.
int default_truncation(double alpha, int d, double a, double tol = 1e-9);

// Truncated series at t.  Evaluation is by the exact doubling map
// u -> frac(2u) (doubling and the conditional subtract are both exact in
// binary floating point), so each term sees the argument 2^k t reduced mod 1
// without catastrophic cancellation.  Reduction goes through |t| first, so
// h(-t) == h(t) bitwise.  alpha may be anything positive here; the (0,1)
// restriction belongs to the kernels, not to h itself.
double h_eval(double alpha, int k, double t);

// Exact L2 modulus of the shift:  || h - h(. - y) ||_{L2[0,1]}
//   = sqrt( sum_{k=0..K} 2^{-2k*alpha} * (1 - cos(2*pi*2^k*y)) ),
// by orthogonality of the distinct frequencies.
double l2_modulus(double alpha, int k, double y);

// Distance to the nearest integer: min(frac, 1 - frac).
double torus_dist(double x, double y);

// Coordinatewise sum of torus distances between two points.
double torus_dist(std::span<const double> x, std::span<const double> y);

}  // namespace graphon
