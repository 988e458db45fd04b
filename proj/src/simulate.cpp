// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/simulate.hpp>

#include <cmath>

#include <Eigen/LU>

#include <nirom/modal.hpp>
#include <nirom/preprocess.hpp>

namespace nirom
{

namespace
{

void guard(const VectorXd& x, Index k)
{
    for (Index i = 0; i < x.size(); ++i)
    {
        if (!std::isfinite(x(i)) || std::abs(x(i)) > kOverflowGuard)
        {
            throw Error(ErrorCode::NonFiniteState,
                        "state overflow at step " + std::to_string(k + 1));
        }
    }
}

void check_input(const MatrixXd& U, Index n_u)
{
    require(U.rows() == n_u, ErrorCode::ShapeMismatch,
            "input has " + std::to_string(U.rows()) + " rows, model expects " + std::to_string(n_u));
    require(U.cols() >= 1, ErrorCode::ShapeMismatch, "input has no samples");
}

VectorXd initial_state(const std::optional<VectorXd>& x0, Index r)
{
    require(!x0 || x0->size() == r, ErrorCode::ShapeMismatch, "x0 must have one entry per state");
    return x0 ? *x0 : VectorXd::Zero(r);
}

MatrixXd delayed(const MatrixXd& Y, const std::optional<DelayOperator>& delay)
{
    if (!delay || delay->size() == 0)
        return Y;
    return apply_delay(Y, *delay);
}

} // namespace

SimulationResult simulate(const InferredModel& model, const MatrixXd& U,
                          const std::optional<VectorXd>& x0)
{
    model.validate();
    check_input(U, model.n_inputs());
    const Index r = model.order();
    const Index N = U.cols();
    const bool bilinear = model.model_class != ModelClass::Linear;
    const bool quadratic = model.model_class == ModelClass::QuadraticBilinear;

    SimulationResult res{MatrixXd(model.n_outputs(), N), MatrixXd(r, N)};
    VectorXd x = initial_state(x0, r);
    guard(x, 0);
    for (Index k = 0; k < N; ++k)
    {
        res.X.col(k) = x;
        auto y = res.Z.col(k);
        y = model.C * x + model.D * U.col(k);
        if (bilinear)
            y += model.F * x * U(0, k);
        if (quadratic)
            y += model.G * halfvec_square(x);
        if (k + 1 < N)
        {
            VectorXd next = model.A * x + model.B * U.col(k);
            if (bilinear)
                next += model.N * x * U(0, k);
            guard(next, k + 1);
            x = std::move(next);
        }
    }
    res.Z = delayed(res.Z, model.delay);
    return res;
}

SimulationResult simulate_descriptor(const Realization& model, const MatrixXd& U,
                                     const std::optional<VectorXd>& x0)
{
    check_input(U, model.n_inputs());
    const Index r = model.order();
    const Index N = U.cols();
    const bool identity = model.E.isIdentity(0.0);
    Eigen::PartialPivLU<MatrixXd> lu;
    if (!identity && r > 0)
    {
        const double econd = condition_number(model.E);
        require(econd < 1e12, ErrorCode::SingularE,
                "E is numerically singular (condition " + std::to_string(econd) + ")");
        lu.compute(model.E);
    }

    SimulationResult res{MatrixXd(model.n_outputs(), N), MatrixXd(r, N)};
    VectorXd x = initial_state(x0, r);
    for (Index k = 0; k < N; ++k)
    {
        res.X.col(k) = x;
        res.Z.col(k) = model.C * x + model.D * U.col(k);
        if (k + 1 < N)
        {
            VectorXd rhs = model.A * x + model.B * U.col(k);
            x = identity || r == 0 ? rhs : VectorXd(lu.solve(rhs));
            guard(x, k + 1);
        }
    }
    res.Z = delayed(res.Z, model.delay);
    return res;
}

SimulationResult simulate_descriptor(const BlockDiagonalRealization& model, const MatrixXd& U,
                                     const std::optional<VectorXd>& x0)
{
    check_input(U, model.n_inputs());
    const Index n = model.order();
    const Index N = U.cols();
    const VectorXd x_init = initial_state(x0, n);
    SimulationResult res{MatrixXd(model.n_outputs(), N), MatrixXd(n, N)};
    for (std::size_t j = 0; j < model.blocks.size(); ++j)
    {
        const Realization& b = model.blocks[j];
        const Index off = model.offset(static_cast<Index>(j));
        const VectorXd xj = x_init.segment(off, b.order());
        const SimulationResult part = simulate_descriptor(b.without_delay(), U, xj);
        res.Z.row(static_cast<Index>(j)) = part.Z.row(0);
        res.X.middleRows(off, b.order()) = part.X;
    }
    res.Z = delayed(res.Z, model.delay);
    return res;
}

MatrixXd impulse_input(Index n_u, Index N)
{
    MatrixXd U = MatrixXd::Zero(n_u, N);
    if (n_u > 0 && N > 0)
        U(0, 0) = 1.0;
    return U;
}

MatrixXd step_input(Index n_u, Index N) { return MatrixXd::Ones(n_u, N); }

MatrixXd impulse_response(const Realization& model, Index N)
{
    require(model.n_inputs() == 1, ErrorCode::DimensionMismatch,
            "impulse response needs a single-input model");
    return simulate_descriptor(model, impulse_input(1, N)).Z;
}

MatrixXd impulse_response(const BlockDiagonalRealization& model, Index N)
{
    require(model.n_inputs() == 1, ErrorCode::DimensionMismatch,
            "impulse response needs a single-input model");
    return simulate_descriptor(model, impulse_input(1, N)).Z;
}

MatrixXd impulse_response(const InferredModel& model, Index N)
{
    require(model.n_inputs() == 1, ErrorCode::DimensionMismatch,
            "impulse response needs a single-input model");
    return simulate(model, impulse_input(1, N)).Z;
}

} // namespace nirom
