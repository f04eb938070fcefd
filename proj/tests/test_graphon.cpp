#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphon/errors.hpp"
#include "graphon/graphon.hpp"
#include "graphon/hilbert.hpp"
#include "graphon/rng.hpp"
#include "graphon/weierstrass.hpp"

using namespace graphon;

namespace {

Point random_point(SplitMix64& rng, int d) {
  Point p(static_cast<std::size_t>(d));
  for (auto& c : p) c = rng.next_unit();
  return p;
}

}  // namespace

TEST_CASE("dot-product kernel values") {
  Graphon w = build(GraphonSpec{DotProductSpec{2, 0.5}});
  CHECK(eval(w, {1.0, 1.0}, {1.0, 1.0}) == 1.0);
  CHECK(eval(w, {1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(eval(w, {0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.25));

  Graphon w1 = build(GraphonSpec{DotProductSpec{1, 1.0}});
  CHECK(eval(w1, {0.5}, {0.5}) == doctest::Approx(0.25));
}

TEST_CASE("dot-product amplitude defaults to 1/d") {
  GraphonSpec spec{DotProductSpec{3, std::nullopt}};
  Graphon w = build(spec);
  CHECK(eval(w, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("invalid parameters are rejected with named bounds") {
  CHECK_THROWS_AS(build(GraphonSpec{DotProductSpec{2, 0.6}}), InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{DotProductSpec{0, 0.5}}), InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{WeierstrassSumSpec{2, 1.0, std::nullopt, std::nullopt}}),
                  InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{WeierstrassSumSpec{2, 0.0, std::nullopt, std::nullopt}}),
                  InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{WeierstrassSumSpec{1, 0.5, std::nullopt, std::nullopt}}),
                  InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{WeierstrassSumSpec{2, 0.5, 0.2, std::nullopt}}), InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{ConstantSpec{1.5}}), InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{StepBlockSpec{{0.5}, {{0.2, 0.8}, {0.7, 0.4}}}}), InvalidSpec);
  CHECK_THROWS_AS(build(GraphonSpec{StepBlockSpec{{0.7, 0.2}, {{0.2, 0.8, 0.1}, {0.8, 0.4, 0.1}, {0.1, 0.1, 0.1}}}}),
                  InvalidSpec);

  auto inner1 = std::make_shared<GraphonSpec>(GraphonSpec{DotProductSpec{1, 1.0}});
  CHECK_THROWS_AS(build(GraphonSpec{PullbackSpec{8, inner1}}), InvalidSpec);
  auto inner2 = std::make_shared<GraphonSpec>(GraphonSpec{DotProductSpec{2, 0.5}});
  CHECK_THROWS_AS(build(GraphonSpec{PullbackSpec{32, inner2}}), InvalidSpec);

  // Error messages carry the offending quantity.
  try {
    build(GraphonSpec{DotProductSpec{2, 0.6}});
    CHECK(false);
  } catch (const InvalidSpec& e) {
    CHECK(std::string(e.what()).find("a*d") != std::string::npos);
  }
}

TEST_CASE("lacunary-sum kernel saturates to 1 on the diagonal") {
  Graphon w = build(GraphonSpec{WeierstrassSumSpec{2, 0.5, std::nullopt, 40}});
  CHECK(eval(w, {0.3, 0.8}, {0.3, 0.8}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eval(w, {0.0, 0.0}, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("truncation error is inside the stated tail bound") {
  const double alpha = 0.5;
  const int d = 2;
  const double a = safe_amplitude(alpha, d);
  Graphon coarse = build(GraphonSpec{WeierstrassSumSpec{d, alpha, a, 10}});
  Graphon fine = build(GraphonSpec{WeierstrassSumSpec{d, alpha, a, 30}});
  double bound = truncation_tail(alpha, d, a, 10) + truncation_tail(alpha, d, a, 30);
  SplitMix64 rng(101);
  for (int i = 0; i < 200; ++i) {
    Point x = random_point(rng, d), y = random_point(rng, d);
    CHECK(std::fabs(eval(coarse, x, y) - eval(fine, x, y)) <= bound + 1e-12);
  }
}

TEST_CASE("every built-in kernel is bitwise symmetric and in range") {
  std::vector<GraphonSpec> specs;
  specs.push_back(GraphonSpec{DotProductSpec{3, std::nullopt}});
  specs.push_back(GraphonSpec{WeierstrassSumSpec{2, 0.5, std::nullopt, std::nullopt}});
  specs.push_back(GraphonSpec{ConstantSpec{0.3}});
  specs.push_back(GraphonSpec{StepBlockSpec{{0.5}, {{0.2, 0.8}, {0.8, 0.4}}}});
  specs.push_back(GraphonSpec{
      PullbackSpec{8, std::make_shared<GraphonSpec>(GraphonSpec{DotProductSpec{2, 0.5}})}});

  for (const auto& spec : specs) {
    Graphon w = build(spec);
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
      Point x = random_point(rng, w.dim()), y = random_point(rng, w.dim());
      double wxy = w(x, y);
      CHECK(wxy == w(y, x));  // exact, not approximate
      CHECK(wxy >= 0.0);
      CHECK(wxy <= 1.0);
    }
    ValidationReport report = validate(w, 500, 11);
    CHECK(report.max_symmetry_defect == 0.0);
    CHECK(report.range_violations == 0);
  }
}

TEST_CASE("step kernel block lookup") {
  Graphon w = build(GraphonSpec{StepBlockSpec{{0.5}, {{0.2, 0.8}, {0.8, 0.4}}}});
  CHECK(eval(w, {0.2}, {0.7}) == 0.8);
  CHECK(eval(w, {0.2}, {0.3}) == 0.2);
  CHECK(eval(w, {0.9}, {0.6}) == 0.4);
  CHECK(eval(w, {1.0}, {0.0}) == 0.8);  // t = 1 belongs to the last block
  CHECK(eval(w, {0.5}, {0.0}) == 0.8);  // cut point opens the next block
}

TEST_CASE("dimension mismatches are rejected at the checked interface") {
  Graphon w = build(GraphonSpec{DotProductSpec{2, 0.5}});
  CHECK_THROWS_AS(eval(w, {0.5}, {0.5, 0.5}), DimensionMismatch);
  CHECK_THROWS_AS(eval(w, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}), DimensionMismatch);
}

TEST_CASE("pullback composes the kernel with the curve map exactly") {
  Graphon inner = build(GraphonSpec{DotProductSpec{2, 0.5}});
  CurveMap curve(2, 8);
  Graphon composed = pullback(inner, curve);
  CHECK(composed.dim() == 1);
  SplitMix64 rng(13);
  for (int i = 0; i < 200; ++i) {
    double s = rng.next_unit(), t = rng.next_unit();
    Point xs = map_point(s, curve), yt = map_point(t, curve);
    CHECK(eval(composed, {s}, {t}) == eval(inner, xs, yt));
  }
  CHECK_THROWS_AS(pullback(inner, CurveMap(3, 8)), DimensionMismatch);
}

TEST_CASE("building a pullback spec equals pulling back the built inner kernel") {
  auto inner = std::make_shared<GraphonSpec>(GraphonSpec{DotProductSpec{2, 0.5}});
  Graphon via_spec = build(GraphonSpec{PullbackSpec{8, inner}});
  Graphon via_op = pullback(build(*inner), CurveMap(2, 8));
  SplitMix64 rng(29);
  for (int i = 0; i < 200; ++i) {
    double s = rng.next_unit(), t = rng.next_unit();
    CHECK(eval(via_spec, {s}, {t}) == eval(via_op, {s}, {t}));
  }
}

TEST_CASE("JSON round trip preserves every spec shape") {
  const std::vector<std::string> docs = {
      R"({"kind":"dot_product","d":2,"a":0.5})",
      R"({"kind":"weierstrass","d":2,"alpha":0.5,"a":null,"k":null})",
      R"({"kind":"constant","p":0.3})",
      R"({"kind":"step","cuts":[0.5],"matrix":[[0.2,0.8],[0.8,0.4]]})",
      R"({"kind":"pullback","bits":20,"inner":{"kind":"dot_product","d":2,"a":0.5}})",
  };
  for (const auto& text : docs) {
    GraphonSpec spec = spec_from_json_text(text);
    std::string emitted = spec_to_json_text(spec);
    GraphonSpec again = spec_from_json_text(emitted);
    CHECK(spec_to_json_text(again) == emitted);

    // Semantically identical kernels.
    Graphon w1 = build(spec), w2 = build(again);
    SplitMix64 rng(31);
    for (int i = 0; i < 50; ++i) {
      Point x = random_point(rng, w1.dim()), y = random_point(rng, w1.dim());
      CHECK(w1(x, y) == w2(x, y));
    }
  }
}

TEST_CASE("JSON null amplitude resolves to the range-safe default") {
  GraphonSpec spec = spec_from_json_text(R"({"kind":"weierstrass","d":2,"alpha":0.5,"a":null,"k":null})");
  const auto& w = std::get<WeierstrassSumSpec>(spec.value);
  CHECK(!w.a.has_value());
  CHECK(w.amplitude() == doctest::Approx(safe_amplitude(0.5, 2)).epsilon(1e-15));
  CHECK(w.truncation() == default_truncation(0.5, 2, safe_amplitude(0.5, 2)));
  // Null fields survive the round trip as nulls.
  CHECK(spec_to_json_text(spec).find("null") != std::string::npos);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(spec_from_json_text("{"), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"mystery"})"), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"d":2})"), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"dot_product","d":"two"})"), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"dot_product","d":2,"a":0.9})"), InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"step","cuts":[0.5],"matrix":[[0.2]]})"),
                  InvalidSpec);
  CHECK_THROWS_AS(spec_from_json_text(R"({"kind":"pullback","bits":20})"), InvalidSpec);
}
