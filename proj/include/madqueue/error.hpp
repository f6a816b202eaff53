#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace madqueue {

enum class ErrorCode {
    BadRange,
    BadParameter,
    InfeasibleMad,
    InfeasibleBeta,
    InfeasibleVariance,
    HorizonTooLarge,
    NoPositiveDrift,
    QuadratureFailure,
    NotCommensurate,
    RootCountMismatch,
    TooFewSamples,
    Unstable,
    IoError,
};

/// Stable machine-readable name, e.g. "InfeasibleMad".
std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for a failure class: 2 validation, 3 numerical, 4 I/O.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace madqueue
