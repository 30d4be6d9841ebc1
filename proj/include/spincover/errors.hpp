#pragma once

#include <stdexcept>

namespace spincover {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SignatureMismatchError : Error { using Error::Error; };
struct NonInvertibleError : Error { using Error::Error; };
struct NoIntertwinerError : Error { using Error::Error; };
struct FactorUnrecognizedError : Error { using Error::Error; };
struct NotOddGradedError : Error { using Error::Error; };
struct VolumeMismatchError : Error { using Error::Error; };
struct NotLipschitzError : Error { using Error::Error; };
struct NormalizationFailedError : Error { using Error::Error; };
struct NotInPinError : Error { using Error::Error; };
struct DegenerateSamplingError : Error { using Error::Error; };
struct GeneratorRelationsError : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

}  // namespace spincover
