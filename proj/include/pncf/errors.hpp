#pragma once

#include <stdexcept>
#include <string>

namespace pncf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor/vector dimension mismatch; message names both shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Record- or row-level input problem; carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Dataset-level problem (empty dataset, duplicate keys, out-of-range values).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument, mode/personality mismatch, bad configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Structural problem in a binary or CSV artifact (magic, version, truncation).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Evaluation protocol violation (candidate overlap, missing scores).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pncf
