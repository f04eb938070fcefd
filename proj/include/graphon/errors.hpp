#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

// Configuration rejected at build/parse time (bad parameter, malformed JSON,
// violated model constraint). Message names the offending field or bound.
struct InvalidSpec : std::runtime_error {
  explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

// Operands whose dimensions disagree with the object they are applied to.
struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Curve index outside [0, 2^(d*bits)).
struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Cell coordinate outside [0, 2^bits) on some axis.
struct CellOutOfRange : std::runtime_error {
  explicit CellOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

// Truncation grid not strictly decreasing / not strictly positive.
struct BadGrid : std::runtime_error {
  explicit BadGrid(const std::string& what) : std::runtime_error(what) {}
};

// Too few retained Monte Carlo pairs to say anything defensible.
struct InsufficientSamples : std::runtime_error {
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

// Log-log fit impossible (zero oscillation somewhere in the scan).
struct DegenerateFit : std::runtime_error {
  explicit DegenerateFit(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of a closed-form expression.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed command-line descriptor (grids, budgets).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Stream write failed.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphon
