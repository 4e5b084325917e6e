#pragma once

#include <stdexcept>
#include <string>

namespace honda {

/// Base of every domain error raised by the library. `name()` is the stable
/// machine-readable tag used in reports and by the command line tool.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define HONDA_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

HONDA_DEFINE_ERROR(InvalidArgument)
HONDA_DEFINE_ERROR(NilpotenceViolation)
HONDA_DEFINE_ERROR(InvalidPairing)
HONDA_DEFINE_ERROR(PrecisionError)
HONDA_DEFINE_ERROR(EnumerationBoundExceeded)
HONDA_DEFINE_ERROR(DegreeOutOfRange)
HONDA_DEFINE_ERROR(SingularCurve)
HONDA_DEFINE_ERROR(NonIntegralModel)
HONDA_DEFINE_ERROR(SingularReduction)
HONDA_DEFINE_ERROR(BadReduction)
HONDA_DEFINE_ERROR(PrecisionTooLow)
HONDA_DEFINE_ERROR(PrimeNotSplit)
HONDA_DEFINE_ERROR(BadReductionPrime)
HONDA_DEFINE_ERROR(MissingAssumption)
HONDA_DEFINE_ERROR(SearchInconclusive)

#undef HONDA_DEFINE_ERROR

}  // namespace honda
