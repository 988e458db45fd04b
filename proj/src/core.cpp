// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/core.hpp>
#include <nirom/transfer.hpp>

#include <cmath>
#include <numeric>

namespace nirom
{

TimeSeriesData TimeSeriesData::from_times(const std::vector<double>& times, MatrixXd inputs,
                                          MatrixXd outputs)
{
    require(times.size() >= 2, ErrorCode::ShapeMismatch, "at least two samples are required");
    require(static_cast<Index>(times.size()) == outputs.cols(), ErrorCode::ShapeMismatch,
            "one time stamp per sample is required");
    const double span = times.back() - times.front();
    const double h = span / static_cast<double>(times.size() - 1);
    require(h > 0.0, ErrorCode::InvalidArgument, "time stamps must be strictly increasing");
    for (std::size_t k = 1; k < times.size(); ++k)
    {
        const double step = times[k] - times[k - 1];
        require(std::abs(step - h) <= 1e-9 * h, ErrorCode::InvalidArgument,
                "time stamps must be uniformly spaced");
    }
    return TimeSeriesData(h, times.front(), std::move(inputs), std::move(outputs));
}

std::vector<double> TimeSeriesData::times() const
{
    std::vector<double> t(static_cast<std::size_t>(samples()));
    for (Index k = 0; k < samples(); ++k)
    {
        t[static_cast<std::size_t>(k)] = time(k);
    }
    return t;
}

void DelayOperator::validate(Index N) const
{
    for (auto t : tau)
    {
        require(t >= 0 && t <= N - 1, ErrorCode::DelayOutOfRange,
                "delay " + std::to_string(t) + " outside [0, " + std::to_string(N - 1) + "]");
    }
}

Index BlockDiagonalRealization::order() const noexcept
{
    Index n = 0;
    for (const auto& b : blocks)
        n += b.order();
    return n;
}

Index BlockDiagonalRealization::n_inputs() const noexcept
{
    return blocks.empty() ? 0 : blocks.front().n_inputs();
}

std::vector<Index> BlockDiagonalRealization::block_orders() const
{
    std::vector<Index> orders;
    orders.reserve(blocks.size());
    for (const auto& b : blocks)
        orders.push_back(b.order());
    return orders;
}

Index BlockDiagonalRealization::offset(Index j) const
{
    Index off = 0;
    for (Index i = 0; i < j; ++i)
        off += blocks[static_cast<std::size_t>(i)].order();
    return off;
}

MatrixXcd eval_transfer(const BlockDiagonalRealization& fom, Complex z, bool with_delay)
{
    const Index n_z = fom.n_outputs();
    MatrixXcd H(n_z, fom.n_inputs());
    for (Index j = 0; j < n_z; ++j)
    {
        H.row(j) = eval_transfer(fom.blocks[static_cast<std::size_t>(j)].without_delay(), z);
    }
    if (with_delay)
    {
        detail::apply_delay_factor(H, fom.delay, z);
    }
    return H;
}

std::string to_string(ModelClass c)
{
    switch (c)
    {
        case ModelClass::Linear: return "linear";
        case ModelClass::Bilinear: return "bilinear";
        case ModelClass::QuadraticBilinear: return "quadratic";
    }
    return "linear";
}

ModelClass model_class_from_string(const std::string& s)
{
    if (s == "linear")
        return ModelClass::Linear;
    if (s == "bilinear")
        return ModelClass::Bilinear;
    if (s == "quadratic" || s == "quadratic-bilinear")
        return ModelClass::QuadraticBilinear;
    throw Error(ErrorCode::InvalidArgument, "unknown model class '" + s + "'");
}

InferredModel InferredModel::linear(MatrixXd a, MatrixXd b, MatrixXd c, MatrixXd d,
                                    DelayOperator delay)
{
    InferredModel m;
    m.model_class = ModelClass::Linear;
    m.A = std::move(a);
    m.B = std::move(b);
    m.C = std::move(c);
    m.D = std::move(d);
    m.delay = std::move(delay);
    m.normalize();
    return m;
}

void InferredModel::normalize()
{
    const Index r = A.rows();
    const Index n_z = C.rows();
    const Index n_u = B.cols();
    if (D.size() == 0)
        D = MatrixXd::Zero(n_z, n_u);
    if (N.size() == 0)
        N = MatrixXd::Zero(r, r);
    if (F.size() == 0)
        F = MatrixXd::Zero(n_z, r);
    if (G.size() == 0)
        G = MatrixXd::Zero(n_z, halfvec_size(r));
    if (delay.size() == 0)
        delay = DelayOperator::zeros(n_z);
    validate();
}

void InferredModel::validate() const
{
    const Index r = A.rows();
    const Index n_z = C.rows();
    const Index n_u = B.cols();
    require(A.cols() == r && B.rows() == r && C.cols() == r, ErrorCode::DimensionMismatch,
            "A, B, C dimensions are inconsistent");
    require(D.rows() == n_z && D.cols() == n_u, ErrorCode::DimensionMismatch, "D must be n_z x n_u");
    require(N.rows() == r && N.cols() == r, ErrorCode::DimensionMismatch, "N must be r x r");
    require(F.rows() == n_z && F.cols() == r, ErrorCode::DimensionMismatch, "F must be n_z x r");
    require(G.rows() == n_z && G.cols() == halfvec_size(r), ErrorCode::DimensionMismatch,
            "G must be n_z x r(r+1)/2");
    require(delay.size() == n_z, ErrorCode::DimensionMismatch, "one delay per output is required");
    if (model_class == ModelClass::Linear)
    {
        require(N.isZero(0.0) && F.isZero(0.0) && G.isZero(0.0), ErrorCode::InvalidArgument,
                "linear models carry no bilinear or quadratic terms");
    }
    if (model_class == ModelClass::Bilinear)
    {
        require(G.isZero(0.0), ErrorCode::InvalidArgument, "bilinear models carry no quadratic term");
    }
    if (model_class != ModelClass::Linear)
    {
        require(n_u == 1, ErrorCode::DimensionMismatch, "bilinear terms require a single input");
    }
}

} // namespace nirom
