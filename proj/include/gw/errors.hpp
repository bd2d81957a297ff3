#pragma once

#include <stdexcept>
#include <string>

namespace gw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GW_DECLARE_ERROR(Name)                 \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Exact algebra.
GW_DECLARE_ERROR(DivisionByZero);
GW_DECLARE_ERROR(PoleAtZero);
GW_DECLARE_ERROR(ZeroFunction);

// Input validation.
GW_DECLARE_ERROR(InvalidDimension);
GW_DECLARE_ERROR(InvalidPartition);
GW_DECLARE_ERROR(InvalidDegree);
GW_DECLARE_ERROR(WrongTarget);
GW_DECLARE_ERROR(ConfigError);

// Weights.
GW_DECLARE_ERROR(GenericityFailure);
GW_DECLARE_ERROR(DegenerateWeights);

// Internal consistency checks. These signal implementation bugs, not bad input.
GW_DECLARE_ERROR(OracleMismatch);
GW_DECLARE_ERROR(InvarianceViolation);
GW_DECLARE_ERROR(FactorizationMismatch);
GW_DECLARE_ERROR(CensusViolation);
GW_DECLARE_ERROR(CacheCorruption);

#undef GW_DECLARE_ERROR

}  // namespace gw
