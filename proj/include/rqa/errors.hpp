#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rqa {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input series has zero variance where a spread is required.
class DegenerateSeries : public Error {
public:
  using Error::Error;
  DegenerateSeries() : Error("series is constant (zero standard deviation)") {}
};

// Not enough samples for the requested embedding / window.
class SeriesTooShort : public Error {
public:
  using Error::Error;
};

// State vectors of different dimension compared.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// Window size exceeds the plot it is applied to.
class WindowTooLarge : public Error {
public:
  using Error::Error;
};

// CSV input lacks a required column.
class MissingColumn : public Error {
public:
  explicit MissingColumn(const std::string& column)
      : Error("missing column: " + column) {}
};

// Malformed CSV row. `row` is the 1-based line number (header = line 1).
class ParseError : public Error {
public:
  ParseError(std::size_t row, const std::string& reason)
      : Error("row " + std::to_string(row) + ": " + reason), row_(row) {}
  std::size_t row() const { return row_; }

private:
  std::size_t row_;
};

// Filesystem-level failure while reading or writing an artifact.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace rqa
