#pragma once

#include <stdexcept>
#include <string>

namespace qprob {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Event algebra across different variants, or masks of mismatched size.
struct IncompatibleEvents : Error {
    using Error::Error;
};

// Conditioning event carries probability at or below the zero threshold.
struct ZeroConditionEvent : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonHermitian : Error {
    using Error::Error;
};

struct EigenDecompositionFailure : Error {
    using Error::Error;
};

// Fock enumeration would exceed the vector-count guard.
struct EnumerationTooLarge : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

// Point conditioning where the wavefunction amplitude vanishes.
struct ZeroAmplitudeAtX : Error {
    using Error::Error;
};

}
