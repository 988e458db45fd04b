// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file synthgen.hpp
///
/// Ground-truth generators: random stable LTI and bilinear systems with a
/// known McMillan degree, and a 2-D advection-diffusion tracer plume sampled
/// at probe points.
///
#ifndef NIROM_SYNTHGEN_HPP
#define NIROM_SYNTHGEN_HPP

#include <cstdint>
#include <vector>

#include <nirom/core.hpp>

namespace nirom
{

///
/// Random explicit model (E = I) of order q with n_z outputs and n_u inputs.
/// Poles are conjugate-closed, separated by at least 0.05 and have modulus
/// in [0.3 rho, 0.98 rho]. Every mode is controllable and observable. Throws
/// DegenerateDraw after 10 rejected draws.
///
Realization make_random_system(Index q, Index n_z, std::uint64_t seed, double rho = 0.9,
                               Index n_u = 1);

/// Bilinear model around make_random_system with ||A||_2 + ||N||_2 < 1, so
/// the state stays bounded for every input with |u| <= 1. F is populated,
/// G is zero.
InferredModel make_random_bilinear(Index q, Index n_z, std::uint64_t seed, double rho = 0.9);

struct PlumeSource
{
    Index i = 0;
    Index j = 0;
    double flux = 1.0; ///< mass per unit time injected into cell (i, j)
};

struct PlumeProbe
{
    Index i = 0;
    Index j = 0;
};

///
/// Grid, transport and sampling settings for make_plume. Cell (i, j) has
/// centre ((i + 1/2) dx, (j + 1/2) dx).
///
struct PlumeConfig
{
    Index nx = 120;
    Index ny = 80;
    double dx = 10.0;
    double wind_x = 6.0;
    double wind_y = 0.0;
    double kappa = 12.0;
    std::vector<PlumeSource> sources;
    std::vector<PlumeProbe> probes;
    Index N = 180;
    double h = 1.0;
    Index substeps = 1;
    bool periodic = false;

    /// Courant-type number (|wx| + |wy|) dt / dx + 4 kappa dt / dx^2.
    double cfl() const;
    /// Raises substeps until cfl() <= 0.9.
    void enforce_cfl();

    /// 4 sources and a 4 x 4 probe array downwind of them, N = 180, h = 1.
    static PlumeConfig rough_mesh();
};

struct PlumeResult
{
    TimeSeriesData data;         ///< U == 1, Z(p, k-1) at probe p after k steps
    DelayOperator truth_delay;   ///< first column above 1e-3 of the final probe maximum
    VectorXd mass;               ///< total mass after k steps, k = 1..N
    double min_concentration = 0.0;
    MatrixXd final_field;        ///< nx x ny
};

/// First-order upwind advection and central diffusion with zero-inflow
/// (or periodic) boundaries. Throws CFLViolation if cfl() > 0.9.
PlumeResult make_plume(const PlumeConfig& config);

} // namespace nirom

#endif /* NIROM_SYNTHGEN_HPP */
