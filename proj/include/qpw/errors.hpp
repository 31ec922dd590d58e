#pragma once

#include <stdexcept>
#include <string>

namespace qpw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QPW_DEFINE_ERROR(Name)              \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

// exact algebra
QPW_DEFINE_ERROR(ZeroDenominator);
QPW_DEFINE_ERROR(IdenticallyZeroDenominator);
QPW_DEFINE_ERROR(PoleAtPoint);
QPW_DEFINE_ERROR(ReducibleKernel);
QPW_DEFINE_ERROR(ZeroDenominatorOnCurve);
QPW_DEFINE_ERROR(DegenerateKernel);
QPW_DEFINE_ERROR(InexactDivision);

// walk model
QPW_DEFINE_ERROR(EmptyStepSet);
QPW_DEFINE_ERROR(ParseError);

// group and classifier
QPW_DEFINE_ERROR(UndefinedGenerator);
QPW_DEFINE_ERROR(InfiniteGroup);
QPW_DEFINE_ERROR(ConventionError);

// series lab
QPW_DEFINE_ERROR(TruncationTooShallow);
QPW_DEFINE_ERROR(InsufficientTerms);

// elliptic layer
QPW_DEFINE_ERROR(ComplexBranchPoints);
QPW_DEFINE_ERROR(PoleAtLatticePoint);
QPW_DEFINE_ERROR(PoleOfUniformization);
QPW_DEFINE_ERROR(TranslationNotFound);
QPW_DEFINE_ERROR(RationalityViolated);
QPW_DEFINE_ERROR(SampleAtSingularity);
QPW_DEFINE_ERROR(InvalidArgument);

#undef QPW_DEFINE_ERROR

}  // namespace qpw
