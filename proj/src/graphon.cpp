#include "graphon/graphon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "graphon/errors.hpp"
#include "graphon/hilbert.hpp"
#include "graphon/rng.hpp"
#include "graphon/weierstrass.hpp"

namespace graphon {

namespace {

inline double clamp_unit(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

Graphon build_dot(const GraphonSpec& spec, const DotProductSpec& s) {
  const double a = s.amplitude();
  return Graphon(spec, s.d,
                 [a](std::span<const double> x, std::span<const double> y) {
                   double dot = 0.0;
                   for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
                   return clamp_unit(a * dot);
                 });
}

Graphon build_weierstrass(const GraphonSpec& spec, const WeierstrassSumSpec& s) {
  const double a = s.amplitude();
  const double alpha = s.alpha;
  const int k = s.truncation();
  // h_eval reduces through |x_i - y_i|, so the expression below is bitwise
  // symmetric in (x, y) with no further care.
  return Graphon(spec, s.d,
                 [a, alpha, k](std::span<const double> x, std::span<const double> y) {
                   double sum = 0.0;
                   for (std::size_t i = 0; i < x.size(); ++i)
                     sum += h_eval(alpha, k, x[i] - y[i]);
                   return clamp_unit(0.5 + a * sum);
                 });
}

Graphon build_constant(const GraphonSpec& spec, const ConstantSpec& s) {
  const double p = s.p;
  return Graphon(spec, 1, [p](std::span<const double>, std::span<const double>) { return p; });
}

Graphon build_step(const GraphonSpec& spec, const StepBlockSpec& s) {
  auto cuts = s.cuts;
  auto matrix = s.matrix;
  auto block_of = [cuts](double t) {
    std::size_t i = 0;
    while (i < cuts.size() && t >= cuts[i]) ++i;
    return i;
  };
  return Graphon(spec, 1,
                 [block_of, matrix](std::span<const double> x, std::span<const double> y) {
                   return matrix[block_of(x[0])][block_of(y[0])];
                 });
}

}  // namespace

Graphon::Graphon(GraphonSpec spec, int dim, Kernel kernel)
    : spec_(std::move(spec)), dim_(dim), kernel_(std::move(kernel)) {}

Graphon build(const GraphonSpec& spec) {
  spec.check();
  return std::visit(
      [&spec](const auto& s) -> Graphon {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DotProductSpec>) return build_dot(spec, s);
        if constexpr (std::is_same_v<T, WeierstrassSumSpec>) return build_weierstrass(spec, s);
        if constexpr (std::is_same_v<T, ConstantSpec>) return build_constant(spec, s);
        if constexpr (std::is_same_v<T, StepBlockSpec>) return build_step(spec, s);
        if constexpr (std::is_same_v<T, PullbackSpec>) {
          Graphon inner = build(*s.inner);
          return pullback(inner, CurveMap(inner.dim(), s.bits));
        }
      },
      spec.value);
}

double eval(const Graphon& w, const Point& x, const Point& y) {
  if (static_cast<int>(x.size()) != w.dim() || static_cast<int>(y.size()) != w.dim())
    throw DimensionMismatch("eval: kernel lives on dimension " + std::to_string(w.dim()) +
                            ", got points of dimension " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  return w(x, y);
}

Graphon pullback(const Graphon& w, const CurveMap& curve) {
  if (curve.dim != w.dim())
    throw DimensionMismatch("pullback: curve dimension " + std::to_string(curve.dim) +
                            " != kernel dimension " + std::to_string(w.dim()));
  GraphonSpec composed{PullbackSpec{curve.bits, std::make_shared<GraphonSpec>(w.spec())}};
  return Graphon(composed, 1,
                 [w, curve](std::span<const double> s, std::span<const double> t) {
                   std::array<double, 62> xs, ys;
                   std::span<double> x(xs.data(), static_cast<std::size_t>(curve.dim));
                   std::span<double> y(ys.data(), static_cast<std::size_t>(curve.dim));
                   map_point_into(s[0], curve, x);
                   map_point_into(t[0], curve, y);
                   return w(x, y);
                 });
}

ValidationReport validate(const Graphon& w, int n_pairs, std::uint64_t seed) {
  SplitMix64 rng(substream(seed, stream_tag::validate));
  const int d = w.dim();
  Point x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  ValidationReport report;
  report.n_pairs = n_pairs;
  report.seed = seed;
  report.min_value = 1.0;
  report.max_value = 0.0;
  for (int i = 0; i < n_pairs; ++i) {
    for (auto& c : x) c = rng.next_unit();
    for (auto& c : y) c = rng.next_unit();
    double wxy = w(x, y);
    double wyx = w(y, x);
    report.max_symmetry_defect = std::max(report.max_symmetry_defect, std::fabs(wxy - wyx));
    if (!(wxy >= 0.0 && wxy <= 1.0)) ++report.range_violations;
    report.min_value = std::min(report.min_value, wxy);
    report.max_value = std::max(report.max_value, wxy);
  }
  return report;
}

}  // namespace graphon
