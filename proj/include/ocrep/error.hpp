#pragma once

#include <stdexcept>
#include <string>

namespace ocrep {

enum class ErrorKind {
  Input,              // malformed data, shape mismatch, bad flag
  Domain,             // argument outside the mathematical domain
  Degenerate,         // all-zero spectrum, empty class, ...
  EstimatorUndefined, // n <= p + 1, rank-deficient OLS
  EstimatorSingular,  // vanishing alpha-hat
  UnsupportedStrategy,
  Numerical,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace ocrep
