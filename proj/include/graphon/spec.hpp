#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Declarative descriptions of the kernels this library can build.  A spec is
// the unit of configuration: it validates itself, round-trips through JSON,
// and is compiled into an evaluatable kernel by build() (graphon.hpp).
//
// JSON shapes:
//   {"kind":"dot_product","d":2,"a":0.5}            (a omitted/null -> 1/d)
//   {"kind":"weierstrass","d":2,"alpha":0.5,"a":null,"k":null}
//   {"kind":"constant","p":0.3}
//   {"kind":"step","cuts":[0.5],"matrix":[[0.2,0.8],[0.8,0.4]]}
//   {"kind":"pullback","bits":20,"inner":{...}}

namespace graphon {

struct GraphonSpec;

// W(x,y) = a * <x,y> on [0,1]^d.  Stays in [0,1] as long as a*d <= 1.
struct DotProductSpec {
  int d = 1;
  std::optional<double> a;  // default 1/d
  double amplitude() const { return a ? *a : 1.0 / d; }
};

// W(x,y) = 1/2 + a * sum_i h_alpha(x_i - y_i) built on the lacunary cosine
// series; Holder(alpha) and nowhere smoother.  a defaults to the largest
// range-safe amplitude, k to the smallest truncation with tail <= 1e-9.
struct WeierstrassSumSpec {
  int d = 2;
  double alpha = 0.5;
  std::optional<double> a;
  std::optional<int> k;
  double amplitude() const;
  int truncation() const;
};

struct ConstantSpec {
  double p = 0.5;
};

// Piecewise-constant kernel on [0,1]: cuts split the interval into blocks,
// matrix[i][j] is the value on block i x block j.
struct StepBlockSpec {
  std::vector<double> cuts;
  std::vector<std::vector<double>> matrix;
};

// Composition with the measure-preserving curve map: the inner kernel on
// [0,1]^d seen through phi: [0,1] -> [0,1]^d at resolution `bits`.
struct PullbackSpec {
  int bits = 20;
  std::shared_ptr<GraphonSpec> inner;
};

struct GraphonSpec {
  std::variant<DotProductSpec, WeierstrassSumSpec, ConstantSpec, StepBlockSpec, PullbackSpec> value;

  // Dimension of the domain the kernel lives on ([0,1]^dim x [0,1]^dim).
  int dim() const;

  // Throws InvalidSpec naming the violated constraint; no-op when valid.
  void check() const;

  std::string kind() const;
};

// JSON (de)serialization; from_json throws InvalidSpec on malformed or
// out-of-range input.  Round-trips preserve unset optional fields as null.
GraphonSpec spec_from_json_text(const std::string& text);
std::string spec_to_json_text(const GraphonSpec& spec, int indent = -1);
GraphonSpec load_spec_file(const std::string& path);

}  // namespace graphon
