#include "graphon/spec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphon/errors.hpp"
#include "graphon/weierstrass.hpp"

namespace graphon {

using nlohmann::json;

double WeierstrassSumSpec::amplitude() const {
  return a ? *a : safe_amplitude(alpha, d);
}

int WeierstrassSumSpec::truncation() const {
  return k ? *k : default_truncation(alpha, d, amplitude());
}

int GraphonSpec::dim() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DotProductSpec>) return s.d;
        if constexpr (std::is_same_v<T, WeierstrassSumSpec>) return s.d;
        if constexpr (std::is_same_v<T, ConstantSpec>) return 1;
        if constexpr (std::is_same_v<T, StepBlockSpec>) return 1;
        if constexpr (std::is_same_v<T, PullbackSpec>) return 1;
      },
      value);
}

std::string GraphonSpec::kind() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DotProductSpec>) return "dot_product";
        if constexpr (std::is_same_v<T, WeierstrassSumSpec>) return "weierstrass";
        if constexpr (std::is_same_v<T, ConstantSpec>) return "constant";
        if constexpr (std::is_same_v<T, StepBlockSpec>) return "step";
        if constexpr (std::is_same_v<T, PullbackSpec>) return "pullback";
      },
      value);
}

namespace {

void check_dot(const DotProductSpec& s) {
  if (s.d < 1) throw InvalidSpec("dot_product: d must be >= 1, got " + std::to_string(s.d));
  double a = s.amplitude();
  if (!(a > 0.0)) throw InvalidSpec("dot_product: amplitude must be > 0");
  if (a * s.d > 1.0 + 1e-12)
    throw InvalidSpec("dot_product: a*d = " + std::to_string(a * s.d) +
                      " exceeds 1, kernel would leave [0,1]");
}

void check_weierstrass(const WeierstrassSumSpec& s) {
  if (s.d < 2) throw InvalidSpec("weierstrass: d must be >= 2, got " + std::to_string(s.d));
  if (!(s.alpha > 0.0 && s.alpha < 1.0))
    throw InvalidSpec("weierstrass: alpha must lie in (0,1), got " + std::to_string(s.alpha));
  double a = s.amplitude();
  double cap = safe_amplitude(s.alpha, s.d);
  if (!(a > 0.0)) throw InvalidSpec("weierstrass: amplitude must be > 0");
  if (a > cap * (1.0 + 1e-12))
    throw InvalidSpec("weierstrass: amplitude " + std::to_string(a) +
                      " exceeds the range-safe bound (1-2^-alpha)/(2d) = " + std::to_string(cap));
  if (s.k && *s.k < 0)
    throw InvalidSpec("weierstrass: truncation k must be >= 0, got " + std::to_string(*s.k));
}

void check_constant(const ConstantSpec& s) {
  if (!(s.p >= 0.0 && s.p <= 1.0))
    throw InvalidSpec("constant: p must lie in [0,1], got " + std::to_string(s.p));
}

void check_step(const StepBlockSpec& s) {
  const std::size_t blocks = s.cuts.size() + 1;
  double prev = 0.0;
  for (double c : s.cuts) {
    if (!(c > prev && c < 1.0))
      throw InvalidSpec("step: cuts must be strictly increasing inside (0,1)");
    prev = c;
  }
  if (s.matrix.size() != blocks)
    throw InvalidSpec("step: matrix must be " + std::to_string(blocks) + "x" +
                      std::to_string(blocks) + " for " + std::to_string(s.cuts.size()) + " cuts");
  for (const auto& row : s.matrix)
    if (row.size() != blocks) throw InvalidSpec("step: matrix rows must all have length " + std::to_string(blocks));
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t j = 0; j < blocks; ++j) {
      double v = s.matrix[i][j];
      if (!(v >= 0.0 && v <= 1.0))
        throw InvalidSpec("step: matrix entries must lie in [0,1]");
      if (v != s.matrix[j][i])
        throw InvalidSpec("step: matrix must be exactly symmetric");
    }
}

void check_pullback(const PullbackSpec& s) {
  if (s.bits < 1) throw InvalidSpec("pullback: bits must be >= 1, got " + std::to_string(s.bits));
  if (!s.inner) throw InvalidSpec("pullback: inner spec is missing");
  s.inner->check();
  int d = s.inner->dim();
  if (d < 2)
    throw InvalidSpec("pullback: inner kernel must live on dimension >= 2, got " + std::to_string(d));
  if (static_cast<long long>(d) * s.bits > 62)
    throw InvalidSpec("pullback: d*bits = " + std::to_string(static_cast<long long>(d) * s.bits) +
                      " exceeds the 62-bit index budget");
}

}  // namespace

void GraphonSpec::check() const {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DotProductSpec>) check_dot(s);
        if constexpr (std::is_same_v<T, WeierstrassSumSpec>) check_weierstrass(s);
        if constexpr (std::is_same_v<T, ConstantSpec>) check_constant(s);
        if constexpr (std::is_same_v<T, StepBlockSpec>) check_step(s);
        if constexpr (std::is_same_v<T, PullbackSpec>) check_pullback(s);
      },
      value);
}

namespace {

double require_number(const json& j, const char* key, const char* kind) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InvalidSpec(std::string(kind) + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int require_int(const json& j, const char* key, const char* kind) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw InvalidSpec(std::string(kind) + ": field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

GraphonSpec parse_spec(const json& j);

GraphonSpec parse_dot(const json& j) {
  DotProductSpec s;
  s.d = require_int(j, "d", "dot_product");
  if (j.contains("a") && !j.at("a").is_null()) s.a = require_number(j, "a", "dot_product");
  return GraphonSpec{s};
}

GraphonSpec parse_weierstrass(const json& j) {
  WeierstrassSumSpec s;
  s.d = require_int(j, "d", "weierstrass");
  s.alpha = require_number(j, "alpha", "weierstrass");
  if (j.contains("a") && !j.at("a").is_null()) s.a = require_number(j, "a", "weierstrass");
  if (j.contains("k") && !j.at("k").is_null()) s.k = require_int(j, "k", "weierstrass");
  return GraphonSpec{s};
}

GraphonSpec parse_constant(const json& j) {
  ConstantSpec s;
  s.p = require_number(j, "p", "constant");
  return GraphonSpec{s};
}

GraphonSpec parse_step(const json& j) {
  StepBlockSpec s;
  if (!j.contains("cuts") || !j.at("cuts").is_array())
    throw InvalidSpec("step: field 'cuts' must be an array");
  for (const auto& c : j.at("cuts")) {
    if (!c.is_number()) throw InvalidSpec("step: cuts must be numbers");
    s.cuts.push_back(c.get<double>());
  }
  if (!j.contains("matrix") || !j.at("matrix").is_array())
    throw InvalidSpec("step: field 'matrix' must be an array of arrays");
  for (const auto& row : j.at("matrix")) {
    if (!row.is_array()) throw InvalidSpec("step: field 'matrix' must be an array of arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw InvalidSpec("step: matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    s.matrix.push_back(std::move(r));
  }
  return GraphonSpec{s};
}

GraphonSpec parse_pullback(const json& j) {
  PullbackSpec s;
  s.bits = require_int(j, "bits", "pullback");
  if (!j.contains("inner") || !j.at("inner").is_object())
    throw InvalidSpec("pullback: field 'inner' must be a spec object");
  s.inner = std::make_shared<GraphonSpec>(parse_spec(j.at("inner")));
  return GraphonSpec{s};
}

GraphonSpec parse_spec(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InvalidSpec("spec: expected an object with a string 'kind' field");
  std::string kind = j.at("kind").get<std::string>();
  GraphonSpec spec = [&] {
    if (kind == "dot_product") return parse_dot(j);
    if (kind == "weierstrass") return parse_weierstrass(j);
    if (kind == "constant") return parse_constant(j);
    if (kind == "step") return parse_step(j);
    if (kind == "pullback") return parse_pullback(j);
    throw InvalidSpec("spec: unknown kind '" + kind + "'");
  }();
  spec.check();
  return spec;
}

json emit_spec(const GraphonSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<T, DotProductSpec>) {
          j["kind"] = "dot_product";
          j["d"] = s.d;
          j["a"] = s.a ? json(*s.a) : json(nullptr);
        }
        if constexpr (std::is_same_v<T, WeierstrassSumSpec>) {
          j["kind"] = "weierstrass";
          j["d"] = s.d;
          j["alpha"] = s.alpha;
          j["a"] = s.a ? json(*s.a) : json(nullptr);
          j["k"] = s.k ? json(*s.k) : json(nullptr);
        }
        if constexpr (std::is_same_v<T, ConstantSpec>) {
          j["kind"] = "constant";
          j["p"] = s.p;
        }
        if constexpr (std::is_same_v<T, StepBlockSpec>) {
          j["kind"] = "step";
          j["cuts"] = s.cuts;
          j["matrix"] = s.matrix;
        }
        if constexpr (std::is_same_v<T, PullbackSpec>) {
          j["kind"] = "pullback";
          j["bits"] = s.bits;
          j["inner"] = emit_spec(*s.inner);
        }
        return j;
      },
      spec.value);
}

}  // namespace

GraphonSpec spec_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("spec: JSON parse failed: ") + e.what());
  }
  return parse_spec(j);
}

std::string spec_to_json_text(const GraphonSpec& spec, int indent) {
  return emit_spec(spec).dump(indent);
}

GraphonSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on spec file: " + path);
  return spec_from_json_text(buf.str());
}

}  // namespace graphon
