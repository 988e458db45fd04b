// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/preprocess.hpp>

#include <cmath>
#include <limits>

namespace nirom
{

PadMode pad_mode_from_string(const std::string& s)
{
    if (s == "hold")
        return PadMode::Hold;
    if (s == "ones")
        return PadMode::Ones;
    if (s == "zero")
        return PadMode::Zero;
    throw Error(ErrorCode::InvalidArgument, "unknown pad mode '" + s + "'");
}

std::string to_string(PadMode p)
{
    switch (p)
    {
        case PadMode::Hold: return "hold";
        case PadMode::Ones: return "ones";
        case PadMode::Zero: return "zero";
    }
    return "hold";
}

DelayOperator estimate_delays(const MatrixXd& Z, double epsilon)
{
    require(epsilon > 0.0, ErrorCode::NonPositiveThreshold, "epsilon must be positive");
    const Index N = Z.cols();
    require(N >= 2, ErrorCode::ShapeMismatch, "at least two samples are required");
    std::vector<Index> tau(static_cast<std::size_t>(Z.rows()));
    for (Index j = 0; j < Z.rows(); ++j)
    {
        Index k = 0;
        while (k < N && std::abs(Z(j, k)) < epsilon)
            ++k;
        tau[static_cast<std::size_t>(j)] = std::min(k, N - 1);
    }
    return DelayOperator(std::move(tau));
}

double default_epsilon(const MatrixXd& Z)
{
    const double peak = Z.size() > 0 ? Z.cwiseAbs().maxCoeff() : 0.0;
    return std::max(1e-3 * peak, std::numeric_limits<double>::min());
}

MatrixXd shift_outputs(const MatrixXd& Z, const DelayOperator& delay, PadMode pad)
{
    const Index N = Z.cols();
    require(delay.size() == Z.rows(), ErrorCode::DimensionMismatch,
            "one delay per output row is required");
    delay.validate(N);
    MatrixXd Zd(Z.rows(), N);
    for (Index j = 0; j < Z.rows(); ++j)
    {
        const Index tau = delay[j];
        const Index keep = N - tau;
        Zd.row(j).head(keep) = Z.row(j).tail(keep);
        double fill = 0.0;
        switch (pad)
        {
            case PadMode::Hold: fill = Z(j, N - 1); break;
            case PadMode::Ones: fill = 1.0; break;
            case PadMode::Zero: fill = 0.0; break;
        }
        Zd.row(j).tail(tau).setConstant(fill);
    }
    return Zd;
}

MatrixXd apply_delay(const MatrixXd& Zd, const DelayOperator& delay)
{
    const Index N = Zd.cols();
    require(delay.size() == Zd.rows(), ErrorCode::DimensionMismatch,
            "one delay per output row is required");
    delay.validate(N);
    MatrixXd Z = MatrixXd::Zero(Zd.rows(), N);
    for (Index j = 0; j < Zd.rows(); ++j)
    {
        const Index tau = delay[j];
        Z.row(j).tail(N - tau) = Zd.row(j).head(N - tau);
    }
    return Z;
}

ProcessedData preprocess(const TimeSeriesData& data, std::optional<double> epsilon, PadMode pad)
{
    ProcessedData out;
    out.base = data;
    out.epsilon = epsilon.value_or(default_epsilon(data.Z));
    out.delay = estimate_delays(data.Z, out.epsilon);
    out.Zd = shift_outputs(data.Z, out.delay, pad);
    return out;
}

} // namespace nirom
