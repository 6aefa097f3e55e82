#pragma once

#include <stdexcept>
#include <string>

namespace topoflux {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A simplex with repeated or negative vertex indices.
class InvalidSimplexError : public Error {
public:
  using Error::Error;
};

/// A simplex order or filtration that places a coface before one of its faces,
/// or a filtration whose values are not monotone along face relations.
class OrderingError : public Error {
public:
  using Error::Error;
};

/// A construction that would exceed a configured size budget.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Degenerate geometry the caller must resolve (duplicate points, etc.).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration values (sample too small, tau sublevel empty, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A requested object that does not exist (e.g. no cycle in the diagram).
class NotFoundError : public Error {
public:
  using Error::Error;
};

/// Malformed input files; carries a 1-based line number when known.
class ParseError : public Error {
public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(-1) {}
  long line() const { return line_; }

private:
  long line_;
};

}  // namespace topoflux
