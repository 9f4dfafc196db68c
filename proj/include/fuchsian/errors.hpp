#pragma once
// Error taxonomy shared by every module.  Each condition that a contract can
// signal gets its own type so callers can discriminate without string
// matching; all derive from Error so generic handlers can still catch one
// base.

#include <stdexcept>
#include <string>

namespace fuchsian {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FUCHSIAN_DEFINE_ERROR(NAME)                                  \
  struct NAME : Error {                                              \
    explicit NAME(const std::string& what = #NAME) : Error(what) {}  \
  }

// number fields
FUCHSIAN_DEFINE_ERROR(NotTotallyReal);
FUCHSIAN_DEFINE_ERROR(Reducible);
FUCHSIAN_DEFINE_ERROR(DiscriminantMismatch);
FUCHSIAN_DEFINE_ERROR(DivisionByZero);
FUCHSIAN_DEFINE_ERROR(PrecisionExhausted);
FUCHSIAN_DEFINE_ERROR(PeriodNotSupported);

// volumes / signatures
FUCHSIAN_DEFINE_ERROR(NonHyperbolic);
FUCHSIAN_DEFINE_ERROR(AmbiguousRecognition);
FUCHSIAN_DEFINE_ERROR(BasisHypothesisFails);
FUCHSIAN_DEFINE_ERROR(NotIntegral);
FUCHSIAN_DEFINE_ERROR(HypothesisFails);

// quaternion orders
FUCHSIAN_DEFINE_ERROR(MaximalityCheckFailed);
FUCHSIAN_DEFINE_ERROR(SearchExhausted);
FUCHSIAN_DEFINE_ERROR(ParityViolation);
FUCHSIAN_DEFINE_ERROR(WrongPlace);

// fundamental domains
FUCHSIAN_DEFINE_ERROR(EmptyEnumeration);
FUCHSIAN_DEFINE_ERROR(RefineEpsilon);
FUCHSIAN_DEFINE_ERROR(UnclosedCycle);
FUCHSIAN_DEFINE_ERROR(AreaMismatch);
FUCHSIAN_DEFINE_ERROR(NotSupportedIndex);

// classification / io
FUCHSIAN_DEFINE_ERROR(IoError);
FUCHSIAN_DEFINE_ERROR(RowMismatch);
FUCHSIAN_DEFINE_ERROR(ScreenInconclusive);
FUCHSIAN_DEFINE_ERROR(SimplificationInapplicable);

#undef FUCHSIAN_DEFINE_ERROR

}  // namespace fuchsian
