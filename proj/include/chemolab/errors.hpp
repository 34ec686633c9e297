#pragma once

#include <stdexcept>
#include <string>

namespace chemolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter set violates a positivity/ordering invariant.
struct InvalidParams : Error {
    using Error::Error;
};

// chi * mu <= 0: the model is outside the hyperbolic regime this tool handles.
struct RejectedRegime : Error {
    using Error::Error;
};

struct NonPositiveInput : Error {
    using Error::Error;
};

struct InvalidGamma : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct MissingBetaSignals : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace chemolab
