// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file error.hpp
///
/// Error type shared by every stage of the reduction pipeline.
///
#ifndef NIROM_ERROR_HPP
#define NIROM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nirom
{

enum class ErrorCode
{
    ShapeMismatch,
    DimensionMismatch,
    SingularPencilAtPoint,
    SingularPencil,
    SingularRawPencil,
    SingularE,
    NonPositiveThreshold,
    DelayOutOfRange,
    SequenceTooShort,
    DegenerateSVD,
    BadFrequencyRange,
    CoincidentPoints,
    RankAmbiguity,
    TargetOrderTooLarge,
    NotConjugateClosed,
    DefectiveSpectrum,
    NonFiniteState,
    AllZeroReference,
    DegenerateDraw,
    CFLViolation,
    OrderCeilingExceeded,
    InvalidArgument,
    ParseError,
    IoError,
};

constexpr std::string_view error_name(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularPencilAtPoint: return "SingularPencilAtPoint";
        case ErrorCode::SingularPencil: return "SingularPencil";
        case ErrorCode::SingularRawPencil: return "SingularRawPencil";
        case ErrorCode::SingularE: return "SingularE";
        case ErrorCode::NonPositiveThreshold: return "NonPositiveThreshold";
        case ErrorCode::DelayOutOfRange: return "DelayOutOfRange";
        case ErrorCode::SequenceTooShort: return "SequenceTooShort";
        case ErrorCode::DegenerateSVD: return "DegenerateSVD";
        case ErrorCode::BadFrequencyRange: return "BadFrequencyRange";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::RankAmbiguity: return "RankAmbiguity";
        case ErrorCode::TargetOrderTooLarge: return "TargetOrderTooLarge";
        case ErrorCode::NotConjugateClosed: return "NotConjugateClosed";
        case ErrorCode::DefectiveSpectrum: return "DefectiveSpectrum";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::AllZeroReference: return "AllZeroReference";
        case ErrorCode::DegenerateDraw: return "DegenerateDraw";
        case ErrorCode::CFLViolation: return "CFLViolation";
        case ErrorCode::OrderCeilingExceeded: return "OrderCeilingExceeded";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

///
/// Exception carrying a machine-readable code next to the message. The code
/// name is what the command line tool writes into its reports.
///
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond)
    {
        throw Error(code, what);
    }
}

} // namespace nirom

#endif /* NIROM_ERROR_HPP */
