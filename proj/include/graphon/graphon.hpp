#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "graphon/point.hpp"
#include "graphon/spec.hpp"

namespace graphon {

struct CurveMap;

// An evaluatable symmetric kernel W: [0,1]^d x [0,1]^d -> [0,1].  Kernels
// are built so the two arguments flow through algebraically identical
// operand orders, which makes W(x,y) == W(y,x) hold bitwise, not just up to
// rounding -- several estimators exploit that (a pair (x,x) must produce an
// exactly zero distance, never 1e-17).
class Graphon {
 public:
  using Kernel = std::function<double(std::span<const double>, std::span<const double>)>;

  Graphon(GraphonSpec spec, int dim, Kernel kernel);

  // Unchecked hot-path evaluation; callers guarantee dimensions.
  double operator()(std::span<const double> x, std::span<const double> y) const {
    return kernel_(x, y);
  }

  int dim() const { return dim_; }
  const GraphonSpec& spec() const { return spec_; }

 private:
  GraphonSpec spec_;
  int dim_;
  Kernel kernel_;
};

// Compile a spec into a kernel.  Throws InvalidSpec via spec.check().
Graphon build(const GraphonSpec& spec);

// Checked evaluation: verifies both points have W.dim() coordinates.
double eval(const Graphon& w, const Point& x, const Point& y);

// W composed with the curve map on both arguments; result lives on [0,1].
// Requires curve.dim == w.dim().
Graphon pullback(const Graphon& w, const CurveMap& curve);

// Monte Carlo audit of the kernel contract on random pairs.
struct ValidationReport {
  int n_pairs = 0;
  double max_symmetry_defect = 0.0;  // max |W(x,y) - W(y,x)|, expected exactly 0
  int range_violations = 0;          // values outside [0,1]
  double min_value = 0.0;
  double max_value = 0.0;
  std::uint64_t seed = 0;
};

ValidationReport validate(const Graphon& w, int n_pairs, std::uint64_t seed);

}  // namespace graphon
