// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file pencil.hpp
///
/// Per-output Hankel pencil realization and block-diagonal full-order model
/// assembly.
///
#ifndef NIROM_PENCIL_HPP
#define NIROM_PENCIL_HPP

#include <span>

#include <nirom/core.hpp>

namespace nirom
{

///
/// Hankel matrix H0(a,b) = s_{a+b-1} and its shift H1(a,b) = s_{a+b}
/// (1-based), with L = floor((N-1)/2) rows and M = N-L-1 columns.
///
struct HankelPair
{
    MatrixXd H0;
    MatrixXd H1;
};

HankelPair build_hankel(std::span<const double> s);

/// How a shifted output row is read before realization.
enum class InputShape
{
    Impulse, ///< the row is an impulse response
    Step,    ///< the row is a step response; it is first-differenced
};

InputShape input_shape_from_string(const std::string& s);
std::string to_string(InputShape s);

/// Turns an output row into the impulse-response sequence fed to the pencil.
std::vector<double> to_impulse_sequence(std::span<const double> row, InputShape shape);

///
/// ### pencil_realize
///
/// SISO realization (E, A, B, C) from impulse-response samples s_1..s_N,
/// where s_k is the response at lag k. With the SVD H0 = U S V^T truncated to
/// the n singular values not below tol * sigma_1,
///
///   E = S_1,  A = U_1^T H1 V_1,  B = S_1 V_1^T e_1,  C = e_1^T U_1 S_1.
///
/// Its Markov parameters C (E^{-1} A)^{k-1} E^{-1} B reproduce s_k. An
/// identically zero sequence yields the order-0 model.
///
Realization pencil_realize(std::span<const double> s, double tol = 1e-6);

/// Singular values of H0 of the sequence, for order diagnostics.
VectorXd hankel_singular_values(std::span<const double> s);

///
/// Stacks SISO blocks into the full-order model: E, A, C block diagonal, B
/// stacked, D = 0, delay attached. Throws DimensionMismatch for blocks that
/// are not single-input single-output.
///
BlockDiagonalRealization assemble_fom_blocks(std::vector<Realization> subs, DelayOperator delay);

/// Dense assembly. Refuses models above max_order (OrderCeilingExceeded).
Realization assemble_fom(const std::vector<Realization>& subs, const DelayOperator& delay,
                         Index max_order = 5000);

Realization to_dense(const BlockDiagonalRealization& fom, Index max_order = 5000);

/// Fraction of structurally non-zero entries of the assembled A:
/// sum n_j^2 / (sum n_j)^2.
double block_density(const std::vector<Index>& orders);

} // namespace nirom

#endif /* NIROM_PENCIL_HPP */
