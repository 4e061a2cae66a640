#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linfrac {

// Metric / loss construction and evaluation failures.

struct UnknownMetric : std::invalid_argument {
  explicit UnknownMetric(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownLoss : std::invalid_argument {
  explicit UnknownLoss(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidParam : std::invalid_argument {
  explicit InvalidParam(const std::string& what) : std::invalid_argument(what) {}
};

// |denominator| of the metric ratio fell below the epsilon floor at an
// evaluation point.
struct DegenerateDenominator : std::runtime_error {
  explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

// The denominator lower bound over the feasible rate box is not positive,
// so the regret-transfer constants are undefined.
struct NonPositiveGamma : std::runtime_error {
  explicit NonPositiveGamma(const std::string& what) : std::runtime_error(what) {}
};

// Conditional quantities requested at eta in {0,1} where the link diverges.
struct EtaAtBoundary : std::domain_error {
  explicit EtaAtBoundary(const std::string& what) : std::domain_error(what) {}
};

// Threshold tuning found no candidate with a well-defined metric value.
struct AllCandidatesDegenerate : std::runtime_error {
  explicit AllCandidatesDegenerate(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySample : std::invalid_argument {
  explicit EmptySample(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Training diverged into non-finite objective or gradient values.
struct NonFiniteLoss : std::runtime_error {
  explicit NonFiniteLoss(const std::string& what) : std::runtime_error(what) {}
};

// File parsing errors carry the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
  std::size_t line_no;
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_no(line) {}
};

struct MalformedLine : ParseError {
  MalformedLine(const std::string& what, std::size_t line) : ParseError(what, line) {}
};

struct NonMonotoneIndex : ParseError {
  NonMonotoneIndex(const std::string& what, std::size_t line) : ParseError(what, line) {}
};

struct NonFiniteValue : ParseError {
  NonFiniteValue(const std::string& what, std::size_t line) : ParseError(what, line) {}
};

struct EmptyPartition : std::invalid_argument {
  explicit EmptyPartition(const std::string& what) : std::invalid_argument(what) {}
};

struct SchemaMismatch : std::invalid_argument {
  explicit SchemaMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace linfrac
