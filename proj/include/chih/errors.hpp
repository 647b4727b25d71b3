#pragma once

#include <stdexcept>
#include <string>

namespace chih {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHIH_DEFINE_ERROR(Name)               \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

// exact arithmetic
CHIH_DEFINE_ERROR(DenominatorNotCoprime);
CHIH_DEFINE_ERROR(NotQadicInteger);
CHIH_DEFINE_ERROR(BaseMismatch);

// map definitions
CHIH_DEFINE_ERROR(MalformedDefinition);
CHIH_DEFINE_ERROR(AllCoefficientsOne);
CHIH_DEFINE_ERROR(NonIntegerResult);
CHIH_DEFINE_ERROR(MapRequirement);

// chi / cycles
CHIH_DEFINE_ERROR(PrecisionUnreachable);
CHIH_DEFINE_ERROR(UnitSlope);
CHIH_DEFINE_ERROR(NoNonzeroDigit);

// spectral
CHIH_DEFINE_ERROR(NoConvergence);
CHIH_DEFINE_ERROR(LevelOverflow);

#undef CHIH_DEFINE_ERROR

}  // namespace chih
