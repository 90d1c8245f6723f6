#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlr {

// A guarantee the algorithm must maintain did not hold. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller handed in data outside the documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}
  // Same error, reported against a file.
  ParseError(const std::string& path, const ParseError& inner)
      : std::runtime_error(path + ":" + std::to_string(inner.line()) + ": " + inner.detail()),
        line_(inner.line()),
        detail_(inner.detail()) {}
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void ensure(bool ok, const char* what) {
  if (!ok) throw InvariantViolation(what);
}
inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

inline void require(bool ok, const char* what) {
  if (!ok) throw PreconditionError(what);
}
inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace dlr
