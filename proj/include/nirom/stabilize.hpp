// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file stabilize.hpp
///
/// Discrete-time stability enforcement for reduced descriptor models.
///
/// The stable model is obtained mode by mode: eigenvalues outside the disk
/// of radius 1 - margin are either reflected inside (keeping argument,
/// eigenvectors and residues) or removed together with their modal
/// component. This is a sub-optimal replacement for a best stable
/// approximation in the H-infinity norm.
///
#ifndef NIROM_STABILIZE_HPP
#define NIROM_STABILIZE_HPP

#include <functional>
#include <string>
#include <vector>

#include <nirom/core.hpp>

namespace nirom
{

enum class StabilizeMode
{
    Reflect,
    Discard,
};

StabilizeMode stabilize_mode_from_string(const std::string& s);
std::string to_string(StabilizeMode m);

/// Largest |lambda| over the finite generalized eigenvalues of A x = lambda E x.
/// Infinite eigenvalues give +infinity. Throws SingularPencil when the pencil
/// has a common null direction.
double spectral_radius(const Realization& model);

/// Spectral radius of an explicit dynamics matrix.
double spectral_radius(const MatrixXd& A);

bool is_stable(const Realization& model, double margin = 0.0);

struct StabilizeResult
{
    Realization model;
    double radius_before = 0.0;
    double radius_after = 0.0;
    Index reflected = 0; ///< modes moved inside the disk
    Index discarded = 0; ///< modes removed
    bool changed = false;
    std::vector<std::string> warnings;
};

///
/// Moves every eigenvalue with |lambda| > 1 - margin into the disk.
///
/// Reflect maps lambda to lambda / |lambda| * min(1/|lambda|, 1 - margin)
/// and leaves the eigenvectors, B and C alone, so every stable pole and all
/// residues survive. Discard keeps only the stable spectral component,
/// computed from an ordered Schur form, and lowers the order.
///
/// Already-stable models come back untouched. Changed models are returned
/// in explicit form (E = I). When the eigenvector matrix of E^{-1}A has
/// condition above 1e12, reflect falls back to discard and records a
/// warning.
///
StabilizeResult stabilize(const Realization& model, StabilizeMode mode = StabilizeMode::Reflect,
                          double margin = 1e-6);

///
/// Reorders a complex Schur form A = U T U^H so that the diagonal entries
/// satisfying select come first. Returns their count.
///
Index reorder_schur(MatrixXcd& T, MatrixXcd& U, const std::function<bool(Complex)>& select);

/// Ordered-Schur basis of the invariant subspace of A for eigenvalues with
/// |lambda| <= radius. Columns are orthonormal and complex.
MatrixXcd stable_invariant_subspace(const MatrixXd& A, double radius);

} // namespace nirom

#endif /* NIROM_STABILIZE_HPP */
