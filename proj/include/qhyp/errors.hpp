#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qhyp {

/// Base class of every domain error thrown by the library. `code()` is a
/// stable machine-readable name (also used by the CLI error JSON).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define QHYP_ERROR(Name)                                     \
    class Name : public Error {                              \
    public:                                                  \
        explicit Name(const std::string& what = #Name)       \
            : Error(#Name, what) {}                          \
    };

QHYP_ERROR(ZeroQuaternion)
QHYP_ERROR(DimensionMismatch)
QHYP_ERROR(ZeroVector)
QHYP_ERROR(PositiveVector)
QHYP_ERROR(BoundaryPoint)
QHYP_ERROR(NotBoundaryPoint)
QHYP_ERROR(NearIdentity)
QHYP_ERROR(NotLoxodromic)
QHYP_ERROR(MgTooLarge)
QHYP_ERROR(ADZero)
QHYP_ERROR(DegenerateConfiguration)
QHYP_ERROR(NotDiagonalPosition)
QHYP_ERROR(InsufficientIterations)
QHYP_ERROR(CoincidentEndpoints)
QHYP_ERROR(BelowThreshold)
QHYP_ERROR(MalformedInput)
QHYP_ERROR(InternalError)

#undef QHYP_ERROR

/// Raw matrix failed the J-unitarity residual test.
class NotSymplectic : public Error {
public:
    explicit NotSymplectic(double residual, const std::string& what = "NotSymplectic")
        : Error("NotSymplectic", what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_ = 0.0;
};

/// A length-only bound exceeded its admissible threshold; carries the value.
class ConditionFailed : public Error {
public:
    explicit ConditionFailed(double value, const std::string& what = "ConditionFailed")
        : Error("ConditionFailed", what), value_(value) {}
    double value() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

}  // namespace qhyp
