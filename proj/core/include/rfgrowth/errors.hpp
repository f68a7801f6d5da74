#pragma once

#include <stdexcept>
#include <string>

namespace rfg {

// Precondition violations (bad degree, modulus mismatch, malformed input).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parse failures for the text formats (cycles, words, presentations, tables).
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A growth-function value whose exact representation would exceed the
// configured bit budget (exponential f explodes after very few levels).
struct GrowthOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested n is not covered by the truncated table; rebuild with larger K.
struct TableTooShallow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed; aborting loudly is required behavior.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace rfg
