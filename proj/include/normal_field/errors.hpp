#pragma once

#include <stdexcept>
#include <string>

namespace nfield {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed specs, points that violate a precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computed mathematical identity did not hold.
class IdentityError : public Error {
 public:
  using Error::Error;
};

#define NFIELD_DECLARE_ERROR(Name, Base) \
  class Name : public Base {             \
   public:                               \
    using Base::Base;                    \
  };

NFIELD_DECLARE_ERROR(SpecError, InputError)
NFIELD_DECLARE_ERROR(RegularityError, InputError)
NFIELD_DECLARE_ERROR(CurvatureSignError, InputError)
NFIELD_DECLARE_ERROR(ConvexityError, InputError)
NFIELD_DECLARE_ERROR(CircleDegeneracyError, InputError)
NFIELD_DECLARE_ERROR(TotallyUmbilicError, InputError)
NFIELD_DECLARE_ERROR(GenericityError, InputError)
NFIELD_DECLARE_ERROR(DegenerateCriticalPointError, GenericityError)
NFIELD_DECLARE_ERROR(VertexDegeneracyError, InputError)
NFIELD_DECLARE_ERROR(PointOnCurveError, InputError)
NFIELD_DECLARE_ERROR(PointOnSurfaceError, InputError)
NFIELD_DECLARE_ERROR(ZeroVectorError, InputError)
NFIELD_DECLARE_ERROR(NonRegularValueError, InputError)
NFIELD_DECLARE_ERROR(DegreeResolutionError, Error)
NFIELD_DECLARE_ERROR(MatrixMismatchError, IdentityError)
NFIELD_DECLARE_ERROR(IdentityMismatchError, IdentityError)

#undef NFIELD_DECLARE_ERROR

}  // namespace nfield
