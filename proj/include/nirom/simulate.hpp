// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file simulate.hpp
///
/// Time stepping of inferred and descriptor models. State column k-1 holds
/// x_k, x_1 = x0, and output k uses x_k, so with D = 0 an impulse at k = 1
/// first shows up at k = 2. Output delays are applied as a pure index shift
/// with zero fill.
///
#ifndef NIROM_SIMULATE_HPP
#define NIROM_SIMULATE_HPP

#include <optional>

#include <nirom/core.hpp>

namespace nirom
{

/// States whose magnitude exceeds this are reported as NonFiniteState.
inline constexpr double kOverflowGuard = 1e100;

struct SimulationResult
{
    MatrixXd Z; ///< n_z x N delayed output
    MatrixXd X; ///< r x N state, column 0 is x0
};

///
/// x_{k+1} = A x_k + B u_k + N x_k u_k
/// y_k     = C x_k + D u_k + F x_k u_k + G vech(x_k x_k^T),   Z = delay(y).
///
SimulationResult simulate(const InferredModel& model, const MatrixXd& U,
                          const std::optional<VectorXd>& x0 = std::nullopt);

/// Solves E x_{k+1} = A x_k + B u_k with one LU of E. Throws SingularE.
SimulationResult simulate_descriptor(const Realization& model, const MatrixXd& U,
                                     const std::optional<VectorXd>& x0 = std::nullopt);

/// Block-wise stepping of a block-diagonal model; X stacks the block states.
SimulationResult simulate_descriptor(const BlockDiagonalRealization& model, const MatrixXd& U,
                                     const std::optional<VectorXd>& x0 = std::nullopt);

/// Unit pulse u = (1, 0, ..., 0) from rest; single-input models only.
MatrixXd impulse_response(const Realization& model, Index N);
MatrixXd impulse_response(const BlockDiagonalRealization& model, Index N);
MatrixXd impulse_response(const InferredModel& model, Index N);

/// u = e_1 at k = 1, zero afterwards, as an n_u x N matrix.
MatrixXd impulse_input(Index n_u, Index N);
/// u == 1.
MatrixXd step_input(Index n_u, Index N);

} // namespace nirom

#endif /* NIROM_SIMULATE_HPP */
