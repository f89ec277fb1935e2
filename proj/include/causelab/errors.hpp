#pragma once

#include <stdexcept>
#include <string>

namespace causelab {

// Base for every error the library throws. Reports never throw for
// findings; exceptions are reserved for bad input and broken contracts.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};
class DuplicateElementError : public Error {
 public:
  using Error::Error;
};
class UnknownElementError : public Error {
 public:
  using Error::Error;
};
class ForeignRegionError : public Error {
 public:
  using Error::Error;
};
class NotSpacelikeError : public Error {
 public:
  using Error::Error;
};
class NotDisjointError : public Error {
 public:
  using Error::Error;
};
class NotFullSpecError : public Error {
 public:
  using Error::Error;
};
class EmptyIntersectionError : public Error {
 public:
  using Error::Error;
};
class ZeroConditionError : public Error {
 public:
  using Error::Error;
};
class NotAPartitionError : public Error {
 public:
  using Error::Error;
};
class CapExceededError : public Error {
 public:
  using Error::Error;
};
class LimitError : public Error {
 public:
  using Error::Error;
};
class MeasureError : public Error {
 public:
  using Error::Error;
};
class ModelFormatError : public Error {
 public:
  using Error::Error;
};
// Raised when an implication that holds by construction (SOk => FIN-SOk)
// fails on some model. Always an implementation bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace causelab
