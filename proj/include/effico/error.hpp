// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effico {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    Infeasible,
    DimensionTooLarge,
    TooManyStates,
    OrderingViolated,
    EmptyFeasibleRange,
    BracketFailure,
    RootBracketFailure,
    IntegrationDivergence,
    NumericalFailure,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::TooManyStates: return "TooManyStates";
        case ErrorCode::OrderingViolated: return "OrderingViolated";
        case ErrorCode::EmptyFeasibleRange: return "EmptyFeasibleRange";
        case ErrorCode::BracketFailure: return "BracketFailure";
        case ErrorCode::RootBracketFailure: return "RootBracketFailure";
        case ErrorCode::IntegrationDivergence: return "IntegrationDivergence";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

/// Input errors are the caller's fault; everything else is a numerical failure.
constexpr bool is_input_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::Infeasible:
        case ErrorCode::DimensionTooLarge:
        case ErrorCode::TooManyStates:
        case ErrorCode::OrderingViolated:
        case ErrorCode::EmptyFeasibleRange:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace effico
