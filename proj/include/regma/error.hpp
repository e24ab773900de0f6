#pragma once

#include <stdexcept>
#include <string>

namespace regma {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its size limit. Set REGMA_GUARD_OVERRIDE=1 to lift.
class GuardError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

bool guard_override();

}  // namespace regma
