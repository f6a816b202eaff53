#include "madqueue/error.hpp"

namespace madqueue {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BadRange: return "BadRange";
        case ErrorCode::BadParameter: return "BadParameter";
        case ErrorCode::InfeasibleMad: return "InfeasibleMad";
        case ErrorCode::InfeasibleBeta: return "InfeasibleBeta";
        case ErrorCode::InfeasibleVariance: return "InfeasibleVariance";
        case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
        case ErrorCode::NoPositiveDrift: return "NoPositiveDrift";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::NotCommensurate: return "NotCommensurate";
        case ErrorCode::RootCountMismatch: return "RootCountMismatch";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::Unstable: return "Unstable";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::QuadratureFailure:
        case ErrorCode::RootCountMismatch:
            return 3;
        case ErrorCode::IoError:
            return 4;
        default:
            return 2;
    }
}

}  // namespace madqueue
