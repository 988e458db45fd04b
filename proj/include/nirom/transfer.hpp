// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file transfer.hpp
///
/// Transfer-function evaluation H(z) = C (zE - A)^{-1} B + D and the pencil
/// regularity test.
///
#ifndef NIROM_TRANSFER_HPP
#define NIROM_TRANSFER_HPP

#include <cmath>
#include <random>

#include <Eigen/LU>

#include <nirom/core.hpp>

namespace nirom
{

/// Reciprocal condition numbers below this are treated as singular.
inline constexpr double kSingularRcond = 1e-14;

namespace detail
{

template <typename Derived>
MatrixXcd as_complex(const Eigen::MatrixBase<Derived>& m)
{
    return m.template cast<Complex>();
}

inline void apply_delay_factor(MatrixXcd& H, const std::optional<DelayOperator>& delay, Complex z)
{
    if (!delay)
        return;
    for (Index j = 0; j < H.rows(); ++j)
    {
        const Index tau = (*delay)[j];
        if (tau != 0)
        {
            H.row(j) *= std::pow(z, -static_cast<int>(tau));
        }
    }
}

} // namespace detail

///
/// Evaluates the transfer matrix of a descriptor model at a complex point.
/// When a delay operator is attached, row j carries the extra factor
/// z^{-tau_j}.
///
/// Throws SingularPencilAtPoint when zE - A has condition number above 1e14.
///
template <typename Scalar>
MatrixXcd eval_transfer(const DescriptorRealization<Scalar>& model, Complex z)
{
    MatrixXcd H = detail::as_complex(model.D);
    if (model.order() > 0)
    {
        const MatrixXcd pencil = z * detail::as_complex(model.E) - detail::as_complex(model.A);
        Eigen::PartialPivLU<MatrixXcd> lu(pencil);
        const double rc = lu.rcond();
        if (!(rc > kSingularRcond))
        {
            throw Error(ErrorCode::SingularPencilAtPoint,
                        "zE - A is singular at the evaluation point");
        }
        H.noalias() += detail::as_complex(model.C) * lu.solve(detail::as_complex(model.B));
    }
    detail::apply_delay_factor(H, model.delay, z);
    return H;
}

///
/// Transfer of a block-diagonal full-order model. Each output row is the
/// transfer of its own block, so n_z small solves replace one order-n solve.
///
MatrixXcd eval_transfer(const BlockDiagonalRealization& fom, Complex z, bool with_delay = true);

///
/// Pencil regularity check: det(zE - A) is not identically zero. Tested by
/// checking full rank of zE - A at a few pseudo-random shifts.
///
template <typename Scalar>
bool is_regular(const DescriptorRealization<Scalar>& model)
{
    const Index n = model.order();
    if (n == 0)
        return true;
    const MatrixXcd E = detail::as_complex(model.E);
    const MatrixXcd A = detail::as_complex(model.A);
    const double scale = 1.0 + A.norm() / std::max(E.norm(), 1e-300);
    std::mt19937_64 gen(0x5eedULL);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> radius(0.3, 1.7);
    for (int trial = 0; trial < 4; ++trial)
    {
        const Complex z = std::polar(scale * radius(gen), angle(gen));
        Eigen::FullPivLU<MatrixXcd> lu(z * E - A);
        lu.setThreshold(1e-12);
        if (lu.rank() == n)
            return true;
    }
    return false;
}

} // namespace nirom

#endif /* NIROM_TRANSFER_HPP */
