// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/metrics.hpp>

#include <cmath>
#include <limits>

namespace nirom
{

Normalization normalization_from_string(const std::string& s)
{
    if (s == "global_max")
        return Normalization::GlobalMax;
    if (s == "absolute")
        return Normalization::Absolute;
    throw Error(ErrorCode::InvalidArgument, "unknown normalization '" + s + "'");
}

std::string to_string(Normalization n)
{
    return n == Normalization::GlobalMax ? "global_max" : "absolute";
}

namespace
{

void check_shapes(const MatrixXd& Z, const MatrixXd& Zhat)
{
    require(Z.rows() == Zhat.rows() && Z.cols() == Zhat.cols(), ErrorCode::ShapeMismatch,
            "reference is " + std::to_string(Z.rows()) + "x" + std::to_string(Z.cols()) +
                ", prediction is " + std::to_string(Zhat.rows()) + "x" +
                std::to_string(Zhat.cols()));
}

} // namespace

MismatchStats mismatch_stats(const MatrixXd& Z, const MatrixXd& Zhat, Normalization norm)
{
    check_shapes(Z, Zhat);
    MismatchStats st;
    if (norm == Normalization::GlobalMax)
    {
        st.scale = Z.size() ? Z.cwiseAbs().maxCoeff() : 0.0;
        require(st.scale > 0.0, ErrorCode::AllZeroReference, "reference data is identically zero");
    }
    const MatrixXd e = (Zhat - Z).cwiseAbs() / st.scale;
    const Index N = Z.cols();
    st.max_err.resize(N);
    st.mean_err.resize(N);
    for (Index k = 0; k < N; ++k)
    {
        st.max_err(k) = Z.rows() ? e.col(k).maxCoeff() : 0.0;
        st.mean_err(k) = Z.rows() ? e.col(k).mean() : 0.0;
    }
    st.max_summary = N ? st.max_err.maxCoeff() : 0.0;
    st.mean_summary = N ? st.mean_err.maxCoeff() : 0.0;
    return st;
}

RelativeErrorField relative_error_field(const MatrixXd& Z, const MatrixXd& Zhat,
                                        std::optional<double> floor)
{
    check_shapes(Z, Zhat);
    RelativeErrorField f;
    const double peak = Z.size() ? Z.cwiseAbs().maxCoeff() : 0.0;
    f.floor = floor.value_or(1e-6 * peak);
    require(f.floor > 0.0 || !floor, ErrorCode::InvalidArgument, "floor must be positive");
    if (f.floor <= 0.0)
        f.floor = std::numeric_limits<double>::min();

    f.percent.resize(Z.rows(), Z.cols());
    f.mask.resize(Z.rows(), Z.cols());
    double sum = 0.0;
    Index used = 0;
    for (Index k = 0; k < Z.cols(); ++k)
    {
        for (Index j = 0; j < Z.rows(); ++j)
        {
            const double z = std::abs(Z(j, k));
            if (z < f.floor)
            {
                f.mask(j, k) = true;
                f.percent(j, k) = std::numeric_limits<double>::quiet_NaN();
                ++f.masked;
                continue;
            }
            const double v = 100.0 * std::abs(Zhat(j, k) - Z(j, k)) / z;
            f.mask(j, k) = false;
            f.percent(j, k) = v;
            f.max_percent = std::max(f.max_percent, v);
            sum += v;
            ++used;
        }
    }
    f.mean_percent = used ? sum / static_cast<double>(used) : 0.0;
    return f;
}

} // namespace nirom
