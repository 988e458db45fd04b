// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file metrics.hpp
///
/// Output mismatch statistics between a reference record Z and a prediction
/// Zhat, both n_z x N.
///
#ifndef NIROM_METRICS_HPP
#define NIROM_METRICS_HPP

#include <optional>
#include <string>

#include <nirom/core.hpp>

namespace nirom
{

enum class Normalization
{
    GlobalMax, ///< divide by max_{j,k} |z_j(t_k)|
    Absolute,  ///< raw |zhat - z|
};

Normalization normalization_from_string(const std::string& s);
std::string to_string(Normalization n);

struct MismatchStats
{
    VectorXd max_err;  ///< per time step, max over channels
    VectorXd mean_err; ///< per time step, mean over channels
    double max_summary = 0.0;  ///< time-maximum of max_err
    double mean_summary = 0.0; ///< time-maximum of mean_err
    double scale = 1.0;        ///< normalizing constant used
};

/// Throws ShapeMismatch, or AllZeroReference for GlobalMax with Z == 0.
MismatchStats mismatch_stats(const MatrixXd& Z, const MatrixXd& Zhat,
                             Normalization norm = Normalization::GlobalMax);

struct RelativeErrorField
{
    MatrixXd percent;                 ///< 100 |zhat - z| / |z|, NaN where masked
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask; ///< true = excluded
    Index masked = 0;
    double max_percent = 0.0;  ///< over unmasked entries
    double mean_percent = 0.0; ///< over unmasked entries
    double floor = 0.0;
};

/// Entries with |z| < floor are masked. Default floor is 1e-6 max|Z|.
RelativeErrorField relative_error_field(const MatrixXd& Z, const MatrixXd& Zhat,
                                        std::optional<double> floor = std::nullopt);

} // namespace nirom

#endif /* NIROM_METRICS_HPP */
