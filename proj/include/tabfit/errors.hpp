#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tabfit {

// Base of everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape mismatch, out-of-bounds cut, or an operation applied to the wrong size.
struct DimensionError : Error {
  using Error::Error;
};

// Bad scalar argument or failed precondition not covered by a more specific class.
struct DomainError : Error {
  using Error::Error;
};

// A cell that must be positive is zero (odds-ratio with an empty cell, zero denominator).
struct ZeroCellError : Error {
  using Error::Error;
};

// The H,H cell sits below its independence expectation int(R); the sorting
// indicator is only defined on nonnegatively associated tables.
struct NegativeAssociationError : Error {
  using Error::Error;
};

// min(high-row margin, high-col margin) does not exceed int(R), so the
// indicator denominator vanishes.
struct DegenerateMarginError : Error {
  using Error::Error;
};

// Targets that no valid output can satisfy: structural-zero patterns under
// scaling, or a negative reconstructed cell in the rank-preserving transform.
struct InfeasibleTargetError : Error {
  using Error::Error;
};

// CSV or number parsing failure with source position (1-based).
struct ParseError : Error {
  std::size_t line = 0;
  std::size_t column = 0;
  ParseError(const std::string& what, std::size_t line_no, std::size_t column_no)
      : Error(what + " (line " + std::to_string(line_no) + ", column " +
              std::to_string(column_no) + ")"),
        line(line_no),
        column(column_no) {}
};

}  // namespace tabfit
