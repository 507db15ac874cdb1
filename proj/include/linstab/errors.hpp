#ifndef LINSTAB_ERRORS_HPP_
#define LINSTAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace linstab {

// Base of every error raised by the library. Callers that only care about
// "something failed" catch this; tests match the concrete subclasses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LINSTAB_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

LINSTAB_DEFINE_ERROR(InvalidArgument)
LINSTAB_DEFINE_ERROR(DivergentIntegral)
LINSTAB_DEFINE_ERROR(AmbiguousTracking)
LINSTAB_DEFINE_ERROR(NonuniquenessError)
LINSTAB_DEFINE_ERROR(UnsupportedCoefficient)
LINSTAB_DEFINE_ERROR(AmbiguousPlacement)
LINSTAB_DEFINE_ERROR(EntropyViolation)
LINSTAB_DEFINE_ERROR(DegenerateState)
LINSTAB_DEFINE_ERROR(IllConditionedBasis)
LINSTAB_DEFINE_ERROR(MissingClassification)
LINSTAB_DEFINE_ERROR(InvalidWeight)
LINSTAB_DEFINE_ERROR(WeightBudgetExhausted)
LINSTAB_DEFINE_ERROR(HyperbolicityError)
LINSTAB_DEFINE_ERROR(ContinuationFailure)
LINSTAB_DEFINE_ERROR(OutOfRadius)
LINSTAB_DEFINE_ERROR(PathRangeError)
LINSTAB_DEFINE_ERROR(SetupError)
LINSTAB_DEFINE_ERROR(MassBoundExceeded)

#undef LINSTAB_DEFINE_ERROR

// Event budget exhausted during an evolution; carries the time reached.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, double time_reached)
      : Error(what), time_reached_(time_reached) {}
  double time_reached() const noexcept { return time_reached_; }

 private:
  double time_reached_;
};

// A tracing step found no consistent arrival point.
class TracingError : public Error {
 public:
  TracingError(const std::string& what, double t, double x)
      : Error(what), t_(t), x_(x) {}
  double t() const noexcept { return t_; }
  double x() const noexcept { return x_; }

 private:
  double t_, x_;
};

}  // namespace linstab

#endif  // LINSTAB_ERRORS_HPP_
