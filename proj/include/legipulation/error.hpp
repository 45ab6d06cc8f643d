#pragma once

#include <stdexcept>
#include <string>

namespace legipulation {

// Root of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Out-of-range or otherwise invalid argument.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// Caller broke a documented precondition relating two inputs.
class ContractViolation : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(const std::string& message, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + message), line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class UnsupportedFormatError : public Error
{
public:
  using Error::Error;
};

class InsufficientPointsError : public Error
{
public:
  using Error::Error;
};

class DegenerateInputError : public Error
{
public:
  using Error::Error;
};

class NoObstacleFoundError : public Error
{
public:
  using Error::Error;
};

// A trajectory could not be assembled from the given waypoints.
class ConstructionError : public Error
{
public:
  using Error::Error;
};

}  // namespace legipulation
