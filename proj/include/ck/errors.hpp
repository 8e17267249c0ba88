#ifndef CK_ERRORS_HPP
#define CK_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ck {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text. line/col are 1-based; col may be 0 when the whole
/// line is at fault.
struct ParseError : Error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("parse error at line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

/// A decision was asked of an object that violates the hypotheses the
/// underlying theorem needs (sinks present, zero rows, ...).
struct HypothesisError : Error {
  using Error::Error;
};

/// A configurable enumeration cap was exceeded (cycle count, subset count,
/// search steps).  Callers surface this as an UNKNOWN verdict.
struct CapExceededError : Error {
  std::uint64_t cap;
  CapExceededError(const std::string& what_exceeded, std::uint64_t cap_)
      : Error(what_exceeded + " exceeded cap " + std::to_string(cap_)),
        cap(cap_) {}
};

/// Bad argument to an in-memory API call (unknown vertex id, dimension
/// mismatch, invalid word, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

}  // namespace ck

#endif  // CK_ERRORS_HPP
