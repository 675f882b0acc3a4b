#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pf {

// Raised by the tokenizer / encoder when a character matches no dictionary
// symbol and no alias. `position` is a 0-based codepoint index.
class UnknownSymbolError : public std::runtime_error {
 public:
  UnknownSymbolError(std::size_t position, const std::string& what_arg)
      : std::runtime_error(what_arg), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DimensionMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatVersionMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset / dictionary / lexicon input. `line` is 1-based, 0 if
// not line-oriented.
class DataError : public std::runtime_error {
 public:
  DataError(std::size_t line, const std::string& what_arg)
      : std::runtime_error(what_arg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pf
