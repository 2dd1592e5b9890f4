#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed level expression. `offset()` is the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A level expression produced a non-finite value at some level index.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, long level)
      : Error(what + " at n=" + std::to_string(level)), level_(level) {}

  long level() const noexcept { return level_; }

 private:
  long level_;
};

/// Invalid model, engine or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The cycle does not absorb heat from the hot bath and release it to the cold one.
class NotAnEngine : public Error {
 public:
  using Error::Error;
};

/// A search failed to converge within its iteration budget.
class OptimizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qce
