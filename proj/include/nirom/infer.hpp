// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file infer.hpp
///
/// Operator inference on reduced-state trajectories.
///
/// A reduced model is run on the training input to produce state snapshots
/// X = [x_1 .. x_{N-1}] and Xs = [x_2 .. x_N]. The operators of a linear,
/// bilinear or quadratic-output difference equation are then fitted by
/// least squares against Xs and the delay-free measured outputs.
///
#ifndef NIROM_INFER_HPP
#define NIROM_INFER_HPP

#include <optional>
#include <string>
#include <vector>

#include <nirom/core.hpp>

namespace nirom
{

/// Explicit form x_{k+1} = E^{-1}A x_k + E^{-1}B u_k. Throws SingularE when
/// cond(E) >= 1e12. The delay is carried over.
InferredModel to_explicit(const Realization& model, double h = 1.0);

/// Runs the linear part (A, B, C, D) of an explicit model from x0 and
/// collects the state snapshots and the delayed model output.
StateTrajectories collect_trajectories(const InferredModel& model, const MatrixXd& U,
                                       const std::optional<VectorXd>& x0 = std::nullopt);

///
/// Stacked data matrix with N-1 columns:
///
///   Linear             [X; U]
///   Bilinear           [X; U; X*u]
///   QuadraticBilinear  [X; U; X*u; vech(x x^T)]
///
/// U is truncated to its first N-1 columns. Bilinear rows need n_u = 1.
///
MatrixXd regressor(ModelClass model_class, const MatrixXd& X, const MatrixXd& U);

struct InferenceOptions
{
    double ridge = 0.0;  ///< Tikhonov weight on every operator block
    double rcond = 1e-10; ///< relative singular-value cutoff of the pseudoinverse
};

///
/// Minimum-norm solution of min ||T - Theta R||_F (+ ridge ||Theta||_F^2).
/// R is p x K data, T is m x K targets, Theta is m x p.
///
MatrixXd solve_least_squares(const MatrixXd& R, const MatrixXd& T,
                             const InferenceOptions& opt = {});

///
/// Fits all operators. The state equation uses [X; U] (linear) or
/// [X; U; X*u] (bilinear and quadratic); the quadratic block only enters the
/// output equation. Zd is n_z x N; its first N-1 columns are matched.
///
InferredModel infer_full(const StateTrajectories& traj, const MatrixXd& Zd, const MatrixXd& U,
                         ModelClass model_class, const InferenceOptions& opt = {});

///
/// Keeps A = Afixed and N = 0, fits B from Xs - Afixed X and the output
/// operators from the class regressor. The spectrum of the result is that
/// of Afixed.
///
InferredModel infer_structured(const StateTrajectories& traj, const MatrixXd& Zd,
                               const MatrixXd& U, ModelClass model_class, const MatrixXd& Afixed,
                               const InferenceOptions& opt = {});

/// Frobenius residuals of a fitted model on its own training data.
struct InferenceResiduals
{
    double state = 0.0;
    double output = 0.0;

    double total() const;
};

InferenceResiduals training_residuals(const InferredModel& model, const StateTrajectories& traj,
                                      const MatrixXd& Zd, const MatrixXd& U);

} // namespace nirom

#endif /* NIROM_INFER_HPP */
