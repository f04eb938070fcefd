#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "graphon/errors.hpp"
#include "graphon/graphon.hpp"
#include "graphon/hilbert.hpp"
#include "graphon/holder.hpp"
#include "graphon/spec.hpp"
#include "graphon/weierstrass.hpp"

using namespace graphon;

namespace {

PairGap identity_gap() {
  return [](std::span<const double> x, std::span<const double> y) {
    return std::fabs(x[0] - y[0]);
  };
}

void check_table_shape(const HolderScanTable& t) {
  REQUIRE(t.scales.size() == t.oscillations.size());
  REQUIRE(t.scales.size() >= 2);
  for (std::size_t i = 1; i < t.scales.size(); ++i) {
    CHECK(t.scales[i] < t.scales[i - 1]);
    // The modulus estimate can only shrink with the scale.
    CHECK(t.oscillations[i] <= t.oscillations[i - 1]);
  }
}

}  // namespace

TEST_CASE("identity function scans to exponent one") {
  ScanBudget budget;
  budget.n_per_scale = 2000;
  auto t = oscillation_scan(identity_gap(), 1, budget, 101);
  check_table_shape(t);
  CHECK(t.alpha_hat > 0.95);
  CHECK(t.alpha_hat < 1.05);
  CHECK(t.r2 > 0.99);
  CHECK(t.n_per_scale == 2000);
  CHECK(t.seed == 101);
}

TEST_CASE("identity-function oscillations are pinched between s/2 and s") {
  // Each sampled gap equals the separation, which lies in (s/2, s]; finer
  // windows contribute at most their own smaller scale.
  ScanBudget budget;
  budget.n_per_scale = 500;
  auto t = oscillation_scan(identity_gap(), 1, budget, 7);
  for (std::size_t i = 0; i < t.scales.size(); ++i) {
    CHECK(t.oscillations[i] <= t.scales[i] * (1.0 + 1e-12));
    CHECK(t.oscillations[i] > t.scales[i] / 2.0);
  }
}

TEST_CASE("lacunary cosine series scans to its construction exponent") {
  const double alpha = 0.5;
  const int k_max = 25;
  PairGap gap = [=](std::span<const double> x, std::span<const double> y) {
    return std::fabs(h_eval(alpha, k_max, x[0]) - h_eval(alpha, k_max, y[0]));
  };
  ScanBudget budget;
  budget.n_per_scale = 3000;
  auto t = oscillation_scan(gap, 1, budget, 202);
  check_table_shape(t);
  CHECK(t.alpha_hat > 0.45);
  CHECK(t.alpha_hat < 0.55);
}

TEST_CASE("constant targets are rejected rather than fitted") {
  PairGap zero = [](std::span<const double>, std::span<const double>) { return 0.0; };
  ScanBudget budget;
  budget.n_per_scale = 200;
  CHECK_THROWS_AS(oscillation_scan(zero, 1, budget, 0), DegenerateFit);
}

TEST_CASE("scan configuration validation") {
  ScanBudget bad;
  bad.n_per_scale = 50;
  CHECK_THROWS_AS(oscillation_scan(identity_gap(), 1, bad, 0), InvalidSpec);

  ScanBudget increasing;
  increasing.n_per_scale = 200;
  increasing.scales = {0.01, 0.1};
  CHECK_THROWS_AS(oscillation_scan(identity_gap(), 1, increasing, 0), InvalidSpec);

  ScanBudget outside;
  outside.n_per_scale = 200;
  outside.scales = {1.5, 0.1};
  CHECK_THROWS_AS(oscillation_scan(identity_gap(), 1, outside, 0), InvalidSpec);

  ScanBudget single;
  single.n_per_scale = 200;
  single.scales = {0.1};
  CHECK_THROWS_AS(oscillation_scan(identity_gap(), 1, single, 0), InvalidSpec);

  ScanBudget zero_dim;
  zero_dim.n_per_scale = 200;
  CHECK_THROWS_AS(oscillation_scan(identity_gap(), 0, zero_dim, 0), InvalidSpec);
}

TEST_CASE("scans are deterministic and thread-count independent") {
  ScanBudget one;
  one.n_per_scale = 400;
  one.threads = 1;
  ScanBudget three = one;
  three.threads = 3;
  auto a = oscillation_scan(identity_gap(), 1, one, 55);
  auto b = oscillation_scan(identity_gap(), 1, one, 55);
  auto c = oscillation_scan(identity_gap(), 1, three, 55);
  CHECK(a.alpha_hat == b.alpha_hat);
  CHECK(a.alpha_hat == c.alpha_hat);
  for (std::size_t i = 0; i < a.oscillations.size(); ++i) {
    CHECK(a.oscillations[i] == b.oscillations[i]);
    CHECK(a.oscillations[i] == c.oscillations[i]);
  }
}

TEST_CASE("estimated exponents move little under a seed change") {
  ScanBudget budget;
  budget.n_per_scale = 2000;
  auto a = oscillation_scan(identity_gap(), 1, budget, 1);
  auto b = oscillation_scan(identity_gap(), 1, budget, 2);
  CHECK(std::fabs(a.alpha_hat - b.alpha_hat) < 0.05);
}

TEST_CASE("product kernel scans to exponent one in its own variables") {
  Graphon w = build(GraphonSpec{DotProductSpec{2, 0.5}});
  ScanBudget budget;
  budget.n_per_scale = 2000;
  auto t = graphon_exponent(w, budget, 303);
  check_table_shape(t);
  CHECK(t.alpha_hat > 0.9);
  CHECK(t.alpha_hat < 1.1);
}

TEST_CASE("space-filling reparameterization divides the exponent by the dimension") {
  SUBCASE("two dimensions halve it") {
    auto t = curve_exponent(CurveMap(2, 20), ScanBudget{{}, 2000, 0}, 404);
    check_table_shape(t);
    CHECK(t.alpha_hat > 0.45);
    CHECK(t.alpha_hat < 0.55);
  }
  SUBCASE("three dimensions give a third") {
    auto t = curve_exponent(CurveMap(3, 16), ScanBudget{{}, 2000, 0}, 405);
    CHECK(t.alpha_hat > 0.28);
    CHECK(t.alpha_hat < 0.39);
  }
}

TEST_CASE("scales below the curve cell width are dropped before scanning") {
  auto t = curve_exponent(CurveMap(2, 8), ScanBudget{{}, 500, 0}, 1);
  // Defaults run 2^-3 .. 2^-14; only 2^-3 .. 2^-8 survive a bits=8 curve.
  REQUIRE(t.scales.size() == 6);
  for (double s : t.scales) CHECK(s >= std::ldexp(1.0, -8));

  // A curve so coarse that at most one scale survives cannot be scanned.
  CHECK_THROWS_AS(curve_exponent(CurveMap(2, 1), ScanBudget{{}, 500, 0}, 1), InvalidSpec);
}

TEST_CASE("oscillation tables serialize to stable CSV") {
  ScanBudget budget;
  budget.n_per_scale = 300;
  auto t = oscillation_scan(identity_gap(), 1, budget, 66);

  std::ostringstream first;
  std::size_t bytes = write_holder_csv(t, first);
  CHECK(bytes == first.str().size());
  CHECK(first.str().rfind("scale,oscillation,n_pairs,alpha_hat,r2,seed\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : first.str())
    if (ch == '\n') ++lines;
  CHECK(lines == t.scales.size() + 1);

  std::ostringstream second;
  write_holder_csv(oscillation_scan(identity_gap(), 1, budget, 66), second);
  CHECK(first.str() == second.str());

  std::ostringstream broken;
  broken.setstate(std::ios::badbit);
  CHECK_THROWS_AS(write_holder_csv(t, broken), IoError);
}
