#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gtd {

/// Arithmetic outside the domain of an operation (ln/sqrt of a non-positive
/// value, division by zero, negative power at a zero base, point outside a
/// system's domain constraints).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Metric is numerically degenerate (condition number above the guard).
class DegenerateMetricError : public std::runtime_error {
 public:
  explicit DegenerateMetricError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Syntax error while parsing an expression or a catalog file. `offset` is
/// the byte offset of the offending token in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace gtd
