// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file loewner.hpp
///
/// Tangential Loewner interpolation of a full-order model sampled on the
/// unit circle, with SVD-based minimal realization and truncation.
///
/// Given left data (mu_j, l_j, v_j^H) and right data (lambda_i, r_i, w_i),
///
///   L(j,i)  = (v_j^H r_i - l_j^H w_i) / (mu_j - lambda_i)
///   Ls(j,i) = (mu_j v_j^H r_i - lambda_i l_j^H w_i) / (mu_j - lambda_i)
///
/// and the descriptor model (-L, -Ls, V, W) interpolates the data whenever
/// the pencil is regular. Projecting with the leading singular vectors of
/// [L, Ls] and [L; Ls] gives a model of the McMillan degree.
///
#ifndef NIROM_LOEWNER_HPP
#define NIROM_LOEWNER_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include <nirom/core.hpp>

namespace nirom
{

/// Conjugation-closed interpolation points split into left and right sets.
struct PointSplit
{
    VectorXcd left;  ///< mu
    VectorXcd right; ///< lambda
};

///
/// count/2 frequencies log-spaced over [omega_min, omega_max] (rad/sample),
/// mapped to e^{+-i omega}. Conjugate pairs alternate between the left
/// (even pair index) and right (odd pair index) sets and are never split.
/// count must be a positive multiple of 4 so that both sides get the same
/// number of points.
///
PointSplit select_points(Index count, double omega_min, double omega_max);

enum class DirectionScheme
{
    Cycled, ///< canonical vectors e_1, e_2, ... e_n, e_1, ...
    Random, ///< seeded random real unit vectors
};

DirectionScheme direction_scheme_from_string(const std::string& s);
std::string to_string(DirectionScheme s);

struct DirectionOptions
{
    DirectionScheme scheme = DirectionScheme::Cycled;
    std::uint64_t seed = 0;
};

/// e_{1 + ((j-1) mod n)} for 1-based j.
VectorXcd cycled_direction(Index j, Index n);

///
/// Samples the delay-free transfer of a model along tangential directions.
/// One direction is drawn per conjugate pair so that paired points carry
/// identical real directions; pair p (1-based, per side) uses
/// cycled_direction(p, n) in the cycled scheme.
///
LoewnerData sample_tangential(const Realization& fom, const PointSplit& points,
                              const DirectionOptions& dirs = {});
LoewnerData sample_tangential(const BlockDiagonalRealization& fom, const PointSplit& points,
                              const DirectionOptions& dirs = {});

struct LoewnerPencil
{
    MatrixXcd L;
    MatrixXcd Ls;
    LoewnerData data;
};

/// Throws CoincidentPoints if some |mu_j - lambda_i| < 1e-14.
LoewnerPencil build_loewner(const LoewnerData& data);

/// Raw interpolant E = -L, A = -Ls, B = V, C = W. Throws SingularRawPencil if
/// the pencil is not regular.
ComplexRealization loewner_realize(const LoewnerPencil& pencil);

/// Either a rank tolerance (order chosen as the numerical rank) or an
/// explicit order.
struct ReductionTarget
{
    std::optional<Index> order;
    double rank_tol = 1e-10;

    static ReductionTarget tolerance(double tol = 1e-10) { return {std::nullopt, tol}; }
    static ReductionTarget explicit_order(Index r, double tol = 1e-10) { return {r, tol}; }
};

struct LoewnerReduction
{
    MatrixXcd Y; ///< m x r, leading left singular vectors of [L, Ls]
    MatrixXcd X; ///< m x r, leading right singular vectors of [L; Ls]
    Index numerical_rank = 0;
    Index rank_row = 0; ///< rank estimate from [L, Ls]
    Index rank_col = 0; ///< rank estimate from [L; Ls]
    VectorXd singular_values_row;
    VectorXd singular_values_col;
};

///
/// Projects the raw interpolant onto r leading singular directions and
/// returns a real model. The data must be closed under conjugation; the
/// pencil is first brought to real form with a block-unitary transform, so
/// all singular vectors are real in those coordinates. Y and X are reported
/// in the original complex coordinates.
///
/// In tolerance mode the two rank estimates must agree (RankAmbiguity
/// otherwise). TargetOrderTooLarge if r > m.
///
std::pair<Realization, LoewnerReduction> reduce_loewner(const LoewnerPencil& pencil,
                                                        const ReductionTarget& target = {});

/// Same projection carried out in complex arithmetic, without realification.
std::pair<ComplexRealization, LoewnerReduction>
reduce_loewner_complex(const LoewnerPencil& pencil, const ReductionTarget& target = {});

/// Largest interpolation residual of a model against the data, relative to
/// the largest sample magnitude.
double interpolation_residual(const ComplexRealization& model, const LoewnerData& data);
double interpolation_residual(const Realization& model, const LoewnerData& data);

} // namespace nirom

#endif /* NIROM_LOEWNER_HPP */
