#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SKEWLAB_ERROR(Name)                                 \
    class Name : public Error {                             \
    public:                                                 \
        explicit Name(const std::string& what)              \
            : Error(std::string(#Name ": ") + what) {}      \
    };

SKEWLAB_ERROR(NonConvergence)
SKEWLAB_ERROR(DomainError)
SKEWLAB_ERROR(RangeError)
SKEWLAB_ERROR(DegenerateFiber)
SKEWLAB_ERROR(DegreeMismatch)
SKEWLAB_ERROR(DegreeOverflow)
SKEWLAB_ERROR(EmptyBoundary)
SKEWLAB_ERROR(EmptyCloud)
SKEWLAB_ERROR(NoRealFixedPoint)
SKEWLAB_ERROR(NotBracketed)
SKEWLAB_ERROR(PerturbationTooLarge)
SKEWLAB_ERROR(PerturbationTooSmall)
SKEWLAB_ERROR(ResonanceError)
SKEWLAB_ERROR(PreconditionViolation)
SKEWLAB_ERROR(ConfigError)
SKEWLAB_ERROR(IoError)

#undef SKEWLAB_ERROR

}  // namespace skewlab
