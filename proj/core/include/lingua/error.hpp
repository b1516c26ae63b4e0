#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lingua {

// Root of every error the toolkit raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A mask scheme cannot host the vocabulary injectively.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A surface is missing from a lexicon.
class CoverageError : public Error {
 public:
  explicit CoverageError(std::string surface)
      : Error("no mask for surface '" + surface + "'"),
        surface_(std::move(surface)) {}
  const std::string& surface() const noexcept { return surface_; }

 private:
  std::string surface_;
};

// A mask is missing from a lexicon's reverse map.
class RevealError : public Error {
 public:
  explicit RevealError(std::string mask)
      : Error("unknown mask '" + mask + "'"), mask_(std::move(mask)) {}
  const std::string& mask() const noexcept { return mask_; }

 private:
  std::string mask_;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class LayoutError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lingua
