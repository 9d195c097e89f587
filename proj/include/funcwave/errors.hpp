#pragma once

#include <stdexcept>
#include <string>

namespace funcwave {

// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define FUNCWAVE_ERROR(Name) \
    struct Name : Error {    \
        explicit Name(const std::string& msg) : Error(msg) {} \
    }

FUNCWAVE_ERROR(InvalidParams);
FUNCWAVE_ERROR(UnknownKind);
FUNCWAVE_ERROR(OutOfDomain);
FUNCWAVE_ERROR(NonDifferentiable);
FUNCWAVE_ERROR(NotInvertible);
FUNCWAVE_ERROR(IterationCapExceeded);
FUNCWAVE_ERROR(SeedJumpMismatch);
FUNCWAVE_ERROR(InvolutionObstruction);
FUNCWAVE_ERROR(NotPositive);
FUNCWAVE_ERROR(ScaleIsOne);
FUNCWAVE_ERROR(NotSchroderSolution);
FUNCWAVE_ERROR(PeriodMismatch);
FUNCWAVE_ERROR(InvalidModeNumbers);
FUNCWAVE_ERROR(NotInvolution);
FUNCWAVE_ERROR(NotCyclicInvariant);
FUNCWAVE_ERROR(OutOfExtensionDomain);

#undef FUNCWAVE_ERROR

}  // namespace funcwave
