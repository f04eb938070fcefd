#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"
#include "graphon/weierstrass.hpp"

using namespace graphon;

namespace {

// Reference evaluator taking the direct route: long double accumulation and
// an independent per-term reduction frac(2^j u) via exact ldexp/fmod, with a
// real cosine for every term.  Slower and differently organized than the
// production path, which is the point.
double h_reference(double alpha, int k, double t) {
  long double u0 = std::fabs(static_cast<long double>(t));
  u0 -= std::floor(u0);
  long double sum = 0.0L;
  for (int j = 0; j <= k; ++j) {
    long double arg = std::fmod(std::ldexp(u0, j), 1.0L);
    sum += std::pow(2.0L, -static_cast<long double>(alpha) * j) *
           std::cos(2.0L * std::numbers::pi_v<long double> * arg);
  }
  return static_cast<double>(sum);
}

// Midpoint rule with m points on [0,1].  The integrands below are
// trigonometric polynomials of degree < m, for which equispaced quadrature
// is exact; the only residual error is floating-point accumulation.
template <typename F>
double periodic_integral(const F& f, int m) {
  double sum = 0.0;
  for (int j = 0; j < m; ++j) sum += f((j + 0.5) / m);
  return sum / m;
}

}  // namespace

TEST_CASE("geometric series anchors: h(0) and h(1/2) at alpha = 1") {
  // Every term of h(0) is its coefficient: sum_{k<=60} 2^-k = 2 - 2^-60.
  CHECK(h_eval(1.0, 60, 0.0) == doctest::Approx(2.0).epsilon(1e-9));
  // At t = 1/2 the k = 0 term is cos(pi) = -1 and every later argument is an
  // exact integer, so the sum telescopes to -2^-60.
  CHECK(h_eval(1.0, 60, 0.5) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::fabs(h_eval(1.0, 60, 0.5)) < 1e-9);
}

TEST_CASE("production evaluator matches the direct reference route") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    double t = rng.next_unit();
    double alpha = 0.2 + 0.8 * rng.next_unit();
    CHECK(h_eval(alpha, 25, t) == doctest::Approx(h_reference(alpha, 25, t)).epsilon(1e-10));
  }
}

TEST_CASE("h is exactly 1-periodic on representable shifts") {
  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    // Grid points coarse enough that t + 1 is exactly representable.
    double t = static_cast<double>(rng.next() >> 32) * 0x1.0p-32;
    CHECK(h_eval(0.5, 40, t + 1.0) == h_eval(0.5, 40, t));
    CHECK(h_eval(0.5, 40, t + 3.0) == h_eval(0.5, 40, t));
  }
}

TEST_CASE("h is exactly even") {
  SplitMix64 rng(6);
  for (int i = 0; i < 200; ++i) {
    double t = 2.0 * rng.next_unit() - 1.0;
    CHECK(h_eval(0.7, 30, -t) == h_eval(0.7, 30, t));
  }
}

TEST_CASE("h stays inside the geometric bound") {
  SplitMix64 rng(7);
  for (double alpha : {0.3, 0.5, 0.9}) {
    double bound = 1.0 / (1.0 - std::exp2(-alpha));
    for (int i = 0; i < 300; ++i) {
      double v = h_eval(alpha, 50, rng.next_unit());
      CHECK(std::fabs(v) <= bound + 1e-12);
    }
  }
}

TEST_CASE("h rejects out-of-domain parameters") {
  CHECK_THROWS_AS(h_eval(0.0, 10, 0.3), DomainError);
  CHECK_THROWS_AS(h_eval(-0.5, 10, 0.3), DomainError);
  CHECK_THROWS_AS(h_eval(0.5, -1, 0.3), DomainError);
  CHECK_THROWS_AS(l2_modulus(0.0, 10, 0.3), DomainError);
}

TEST_CASE("l2 modulus closed form: hand anchors") {
  // y = 1/2: only the k = 0 frequency survives, contributing 1 - cos(pi) = 2.
  CHECK(l2_modulus(0.5, 20, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(l2_modulus(0.9, 5, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // y = 1/4, alpha = 1/2, K >= 2: terms are 1*(1-0) = 1, (1/2)*(1-(-1)) = 1,
  // then zero forever: sqrt(2) again.
  CHECK(l2_modulus(0.5, 2, 0.25) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(l2_modulus(0.5, 20, 0.0) == 0.0);
}

TEST_CASE("l2 modulus agrees with direct quadrature of the shift integral") {
  // (h(t) - h(t-y))^2 with K = 20 is a trigonometric polynomial of degree
  // 2*2^20 < 2^22, so the 2^22-point midpoint rule integrates it exactly.
  const int k = 20, m = 1 << 22;
  const double alpha = 0.5;
  for (double y : {0.3}) {
    double direct = periodic_integral(
        [&](double t) {
          double diff = h_eval(alpha, k, t) - h_eval(alpha, k, t - y);
          return diff * diff;
        },
        m);
    CHECK(std::sqrt(direct) == doctest::Approx(l2_modulus(alpha, k, y)).epsilon(1e-6));
  }
}

TEST_CASE("L1 shift modulus is bounded below against the torus metric") {
  // The lacunary structure forces |h - h(.-y)|_L1 >= c * delta(y)^alpha.
  // Verify the ratio never collapses over random shifts.
  const int k = 12, m = 1 << 13;
  const double alpha = 0.5;
  SplitMix64 rng(31);
  double worst = 1e300;
  for (int i = 0; i < 1000; ++i) {
    double y = 0.5 * (1.0 - rng.next_unit());  // (0, 1/2]
    if (y < 1e-3) continue;                    // keep the quadrature honest at K=12
    double l1 = periodic_integral(
        [&](double t) { return std::fabs(h_eval(alpha, k, t) - h_eval(alpha, k, t - y)); }, m);
    CHECK(l1 >= 0.0);
    worst = std::min(worst, l1 / std::pow(torus_dist(y, 0.0), alpha));
  }
  CHECK(worst > 0.05);
}

TEST_CASE("torus distance basics") {
  CHECK(torus_dist(0.9, 0.1) == doctest::Approx(0.2));
  CHECK(torus_dist(0.75, 0.0) == doctest::Approx(0.25));
  CHECK(torus_dist(0.0, 0.0) == 0.0);
  CHECK(torus_dist(0.5, 0.0) == doctest::Approx(0.5));
  double x[] = {0.9, 0.1}, y[] = {0.1, 0.2};
  CHECK(torus_dist(std::span<const double>(x, 2), std::span<const double>(y, 2)) ==
        doctest::Approx(0.3));
}

TEST_CASE("safe amplitude and default truncation") {
  CHECK(safe_amplitude(0.5, 2) == doctest::Approx((1.0 - std::exp2(-0.5)) / 4.0).epsilon(1e-12));
  CHECK(safe_amplitude(0.5, 2) == doctest::Approx(0.0732233).epsilon(1e-5));

  for (double alpha : {0.3, 0.5, 0.8}) {
    for (int d : {2, 3}) {
      double a = safe_amplitude(alpha, d);
      int k = default_truncation(alpha, d, a);
      CHECK(truncation_tail(alpha, d, a, k) <= 1e-9);
      if (k > 0) CHECK(truncation_tail(alpha, d, a, k - 1) > 1e-9);
      // Tail shrinks monotonically in the truncation order.
      CHECK(truncation_tail(alpha, d, a, k + 1) < truncation_tail(alpha, d, a, k));
    }
  }
}
