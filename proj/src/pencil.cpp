// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/pencil.hpp>

#include <cmath>

#include <Eigen/SVD>

namespace nirom
{

HankelPair build_hankel(std::span<const double> s)
{
    const Index N = static_cast<Index>(s.size());
    require(N >= 3, ErrorCode::SequenceTooShort, "pencil realization needs at least 3 samples");
    const Index L = (N - 1) / 2;
    const Index M = N - L - 1;
    HankelPair hp{MatrixXd(L, M), MatrixXd(L, M)};
    for (Index a = 0; a < L; ++a)
    {
        for (Index b = 0; b < M; ++b)
        {
            hp.H0(a, b) = s[static_cast<std::size_t>(a + b)];
            hp.H1(a, b) = s[static_cast<std::size_t>(a + b + 1)];
        }
    }
    return hp;
}

InputShape input_shape_from_string(const std::string& s)
{
    if (s == "impulse")
        return InputShape::Impulse;
    if (s == "step")
        return InputShape::Step;
    throw Error(ErrorCode::InvalidArgument, "unknown input shape '" + s + "'");
}

std::string to_string(InputShape s)
{
    return s == InputShape::Impulse ? "impulse" : "step";
}

std::vector<double> to_impulse_sequence(std::span<const double> row, InputShape shape)
{
    std::vector<double> s(row.begin(), row.end());
    if (shape == InputShape::Step)
    {
        for (std::size_t k = s.size(); k-- > 1;)
            s[k] -= s[k - 1];
    }
    return s;
}

VectorXd hankel_singular_values(std::span<const double> s)
{
    const HankelPair hp = build_hankel(s);
    return Eigen::BDCSVD<MatrixXd>(hp.H0).singularValues();
}

Realization pencil_realize(std::span<const double> s, double tol)
{
    require(tol > 0.0 && tol < 1.0, ErrorCode::InvalidArgument, "tol must lie in (0, 1)");
    for (double v : s)
    {
        require(std::isfinite(v), ErrorCode::InvalidArgument, "sequence contains non-finite values");
    }
    const HankelPair hp = build_hankel(s);

    bool all_zero = true;
    for (double v : s)
        all_zero = all_zero && v == 0.0;
    if (all_zero)
        return Realization::empty(1, 1);

    Eigen::BDCSVD<MatrixXd> svd(hp.H0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VectorXd& sigma = svd.singularValues();
    require(sigma(0) > 0.0, ErrorCode::DegenerateSVD,
            "Hankel matrix vanishes although the sequence does not");

    Index n = 0;
    while (n < sigma.size() && sigma(n) >= tol * sigma(0))
        ++n;

    const auto U1 = svd.matrixU().leftCols(n);
    const auto V1 = svd.matrixV().leftCols(n);
    const VectorXd S1 = sigma.head(n);

    MatrixXd E = S1.asDiagonal();
    MatrixXd A = U1.transpose() * hp.H1 * V1;
    MatrixXd B = (S1.asDiagonal() * V1.row(0).transpose());
    MatrixXd C = U1.row(0) * S1.asDiagonal();
    return Realization(std::move(E), std::move(A), std::move(B), std::move(C));
}

BlockDiagonalRealization assemble_fom_blocks(std::vector<Realization> subs, DelayOperator delay)
{
    require(delay.size() == static_cast<Index>(subs.size()), ErrorCode::DimensionMismatch,
            "one delay per sub-model is required");
    for (auto& sub : subs)
    {
        require(sub.n_inputs() == 1, ErrorCode::DimensionMismatch, "sub-models must be single-input");
        require(sub.n_outputs() == 1, ErrorCode::DimensionMismatch,
                "sub-models must be single-output");
        sub.delay.reset();
        sub.D.setZero();
    }
    return BlockDiagonalRealization{std::move(subs), std::move(delay)};
}

Realization to_dense(const BlockDiagonalRealization& fom, Index max_order)
{
    const Index n = fom.order();
    require(n <= max_order, ErrorCode::OrderCeilingExceeded,
            "dense assembly of order " + std::to_string(n) + " exceeds the ceiling " +
                std::to_string(max_order));
    const Index n_z = fom.n_outputs();
    const Index n_u = n_z > 0 ? fom.n_inputs() : 1;
    MatrixXd E = MatrixXd::Zero(n, n);
    MatrixXd A = MatrixXd::Zero(n, n);
    MatrixXd B = MatrixXd::Zero(n, n_u);
    MatrixXd C = MatrixXd::Zero(n_z, n);
    Index off = 0;
    for (Index j = 0; j < n_z; ++j)
    {
        const Realization& b = fom.blocks[static_cast<std::size_t>(j)];
        const Index nj = b.order();
        E.block(off, off, nj, nj) = b.E;
        A.block(off, off, nj, nj) = b.A;
        B.middleRows(off, nj) = b.B;
        C.block(j, off, 1, nj) = b.C;
        off += nj;
    }
    return Realization(std::move(E), std::move(A), std::move(B), std::move(C),
                       MatrixXd::Zero(n_z, n_u), fom.delay);
}

Realization assemble_fom(const std::vector<Realization>& subs, const DelayOperator& delay,
                         Index max_order)
{
    return to_dense(assemble_fom_blocks(subs, delay), max_order);
}

double block_density(const std::vector<Index>& orders)
{
    double num = 0.0;
    double total = 0.0;
    for (auto n : orders)
    {
        num += static_cast<double>(n) * static_cast<double>(n);
        total += static_cast<double>(n);
    }
    return total > 0.0 ? num / (total * total) : 0.0;
}

} // namespace nirom
