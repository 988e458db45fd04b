// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file pipeline.hpp
///
/// End-to-end model construction from an input/output record:
///
///   1. delay estimation and shifting
///   2. per-output pencil realization, block-diagonal full-order model
///   3. Loewner reduction to order r, stabilization
///   4. operator inference (linear, bilinear or quadratic output)
///
#ifndef NIROM_PIPELINE_HPP
#define NIROM_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <nirom/core.hpp>
#include <nirom/infer.hpp>
#include <nirom/loewner.hpp>
#include <nirom/pencil.hpp>
#include <nirom/preprocess.hpp>
#include <nirom/stabilize.hpp>

namespace nirom
{

struct FitConfig
{
    std::optional<double> epsilon; ///< delay threshold; default 1e-3 max|Z|
    PadMode pad = PadMode::Hold;
    InputShape input_shape = InputShape::Step;
    double pencil_tol = 1e-6;
    Index max_fom_order = 5000;
    Index loewner_points = 600;
    double omega_min = 6e-4;
    double omega_max = 0.6;
    DirectionOptions directions;
    std::optional<Index> order = 30; ///< nullopt picks the numerical rank
    double rank_tol = 1e-10;
    StabilizeMode stabilize = StabilizeMode::Reflect;
    double stability_margin = 1e-6;
    ModelClass model_class = ModelClass::Bilinear;
    bool structured = true;
    InferenceOptions inference;
};

/// One inference problem solved on the training data.
struct ProblemResidual
{
    ModelClass model_class = ModelClass::Linear;
    bool structured = true;
    InferenceResiduals residuals;
};

struct FitReport
{
    DelayOperator delay;
    double epsilon = 0.0;
    std::vector<Index> pencil_orders;
    Index fom_order = 0;
    Index loewner_points_per_side = 0;
    Index numerical_rank = 0;
    Index rank_row = 0;
    Index rank_col = 0;
    Index order = 0;
    VectorXd singular_values;
    double radius_before = 0.0;
    double radius_after = 0.0;
    Index reflected = 0;
    Index discarded = 0;
    std::vector<ProblemResidual> problems;
    std::vector<std::string> warnings;
};

struct FitResult
{
    InferredModel model;
    Realization rom; ///< stabilized Loewner model, explicit form
    BlockDiagonalRealization fom;
    ProcessedData processed;
    FitReport report;
};

FitResult fit(const TimeSeriesData& data, const FitConfig& config = {});

/// Training residuals of every model class, in full and structured mode.
std::vector<ProblemResidual> all_problem_residuals(const StateTrajectories& traj,
                                                   const MatrixXd& Zd, const MatrixXd& U,
                                                   const MatrixXd& Afixed,
                                                   const InferenceOptions& opt);

} // namespace nirom

#endif /* NIROM_PIPELINE_HPP */
