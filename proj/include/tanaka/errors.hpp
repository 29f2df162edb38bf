#ifndef TANAKA_ERRORS_HPP
#define TANAKA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tanaka {

/// Bad user input: mismatched charts, malformed models, invalid arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured resource cap was hit (degree guard, unknown-count guard, size guard).
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse failure with a 1-based location in the source text.
struct ParseError : InputError {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : InputError(msg + " (line " + std::to_string(line_) + ", column " +
                   std::to_string(column_) + ")"),
        line(line_), column(column_) {}
};

/// Violation of a property the engine itself guarantees; a bug, not bad input.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace tanaka

#endif
