#pragma once

#include <stdexcept>
#include <string>

namespace mincca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidColorError : public Error {
public:
  using Error::Error;
};

/// An arborescence or decomposition does not have the required shape.
class StructureError : public Error {
public:
  using Error::Error;
};

class NoSpanningTreeError : public Error {
public:
  using Error::Error;
};

/// Input exceeds a size guard of an exhaustive routine.
class SizeError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

}  // namespace mincca
