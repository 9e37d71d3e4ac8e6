#pragma once

#include <stdexcept>
#include <string>

namespace sbeauty {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Protocol invariant violations (weight sums, missing branches, duplicates).
struct ValidationError : Error {
  using Error::Error;
};

// Scenario / book text syntax errors, with 1-based position.
struct ParseError : Error {
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) +
              ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Event scope mismatches, conditioning on null events, bad partitions.
struct MeasureError : Error {
  using Error::Error;
};

struct BettingError : Error {
  using Error::Error;
};

struct BranchingError : Error {
  using Error::Error;
};

struct SamplerError : Error {
  using Error::Error;
};

}  // namespace sbeauty
