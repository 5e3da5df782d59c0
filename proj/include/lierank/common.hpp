#pragma once

#include <stdexcept>
#include <string>

namespace lierank {

inline constexpr const char* kVersion = "0.1.0";

// Coefficients with magnitude below this are dropped from operators.
inline constexpr double kZeroTol = 1e-12;

// Gram-Schmidt residual norm above which a candidate counts as independent.
inline constexpr double kIndependenceTol = 1e-9;

// Largest qubit count for dense-matrix operations (2^6 x 2^6).
inline constexpr int kDenseCap = 6;

// Widest Pauli string representable in one machine word per mask.
inline constexpr int kMaxQubits = 64;

struct SizeMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TruncatedTraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lierank
