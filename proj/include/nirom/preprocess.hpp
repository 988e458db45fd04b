// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file preprocess.hpp
///
/// Transport-delay estimation and delay removal from output records.
///
#ifndef NIROM_PREPROCESS_HPP
#define NIROM_PREPROCESS_HPP

#include <optional>

#include <nirom/core.hpp>

namespace nirom
{

/// Fill used for the tail of delay-shifted rows.
enum class PadMode
{
    Hold,  ///< repeat the last sample
    Ones,  ///< literal ones
    Zero,
};

PadMode pad_mode_from_string(const std::string& s);
std::string to_string(PadMode p);

///
/// tau_j = number of leading samples of row j with |z| < epsilon. A row that
/// never reaches epsilon gets tau_j = N-1.
///
DelayOperator estimate_delays(const MatrixXd& Z, double epsilon);

/// 1e-3 max|Z|, or the smallest positive double when Z is identically zero.
double default_epsilon(const MatrixXd& Z);

///
/// Row j becomes [z_j(1+tau_j), ..., z_j(N), p, ..., p] with tau_j trailing
/// pad values.
///
MatrixXd shift_outputs(const MatrixXd& Z, const DelayOperator& delay,
                       PadMode pad = PadMode::Hold);

/// Prepends tau_j zeros to row j and truncates to N columns.
MatrixXd apply_delay(const MatrixXd& Zd, const DelayOperator& delay);

struct ProcessedData
{
    TimeSeriesData base;
    MatrixXd Zd;
    DelayOperator delay;
    double epsilon = 0.0;
};

/// Delay estimation followed by output shifting. epsilon defaults to
/// default_epsilon(data.Z).
ProcessedData preprocess(const TimeSeriesData& data, std::optional<double> epsilon = std::nullopt,
                         PadMode pad = PadMode::Hold);

} // namespace nirom

#endif /* NIROM_PREPROCESS_HPP */
