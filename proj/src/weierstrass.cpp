#include "graphon/weierstrass.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graphon/errors.hpp"

namespace graphon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Refresh cadence for the cosine doubling recurrence.  cos(2u) = 2cos^2(u)-1
// doubles the rounding error per step (the doubling map is chaotic), so we
// re-anchor with a real cosine every few terms; 16 steps cost at most
// 2^16 * 2^-53 ~ 7e-12 of drift, far below every tolerance used here.
constexpr int kCosRefresh = 16;

// frac(2u) for u in [0,1).  Both operations are exact in binary floating
// point, which is the whole trick: the sequence u_k = frac(2^k u_0) carries
// no accumulated rounding error.
inline double double_mod_one(double u) {
  u += u;
  return u >= 1.0 ? u - 1.0 : u;
}

}  // namespace

double safe_amplitude(double alpha, int d) {
  if (!(alpha > 0.0)) throw DomainError("safe_amplitude: alpha must be > 0");
  if (d < 1) throw DomainError("safe_amplitude: d must be >= 1");
  return (1.0 - std::exp2(-alpha)) / (2.0 * d);
}

double truncation_tail(double alpha, int d, double a, int k) {
  return a * d * std::exp2(-(k + 1) * alpha) / (1.0 - std::exp2(-alpha));
}

int default_truncation(double alpha, int d, double a, double tol) {
  if (!(alpha > 0.0)) throw DomainError("default_truncation: alpha must be > 0");
  if (!(tol > 0.0)) throw DomainError("default_truncation: tol must be > 0");
  int k = 0;
  while (truncation_tail(alpha, d, a, k) > tol && k < 4096) ++k;
  return k;
}

double h_eval(double alpha, int k, double t) {
  if (!(alpha > 0.0)) throw DomainError("h_eval: alpha must be > 0");
  if (k < 0) throw DomainError("h_eval: truncation order must be >= 0");

  // Reduce through |t| so evenness holds bitwise, then mod 1.
  double u = std::fabs(t);
  u -= std::floor(u);

  const double w = std::exp2(-alpha);
  double sum = 0.0;
  double scale = 1.0;
  double c = std::cos(kTwoPi * u);
  for (int j = 0;;) {
    if (u == 0.0) {
      // All remaining arguments are exactly 0: close with the geometric tail
      // scale * (1 + w + ... + w^{k-j}).
      sum += scale * (1.0 - std::pow(w, k - j + 1)) / (1.0 - w);
      return sum;
    }
    sum += scale * c;
    if (++j > k) break;
    scale *= w;
    u = double_mod_one(u);
    c = (j % kCosRefresh == 0) ? std::cos(kTwoPi * u) : 2.0 * c * c - 1.0;
  }
  return sum;
}

double l2_modulus(double alpha, int k, double y) {
  if (!(alpha > 0.0)) throw DomainError("l2_modulus: alpha must be > 0");
  if (k < 0) throw DomainError("l2_modulus: truncation order must be >= 0");

  double u = std::fabs(y);
  u -= std::floor(u);

  const double w2 = std::exp2(-2.0 * alpha);
  double sum = 0.0;
  double scale = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (u == 0.0) break;  // every remaining term is exactly zero
    // 1 - cos(2 pi u) = 2 sin^2(pi u): nonnegative by construction and
    // accurate near u = 0 where the direct difference would cancel.
    double s = std::sin(std::numbers::pi * u);
    sum += scale * 2.0 * s * s;
    scale *= w2;
    u = double_mod_one(u);
  }
  return std::sqrt(sum);
}

double torus_dist(double x, double y) {
  double f = std::fabs(x - y);
  f -= std::floor(f);
  return f <= 0.5 ? f : 1.0 - f;
}

double torus_dist(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DimensionMismatch("torus_dist: points have different dimensions");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += torus_dist(x[i], y[i]);
  return sum;
}

}  // namespace graphon
