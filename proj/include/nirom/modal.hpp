// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file modal.hpp
///
/// Eigen-decomposition helpers with explicit conjugate pairing, used for
/// stabilization and for turning complex realizations of real transfer
/// functions into real ones.
///
#ifndef NIROM_MODAL_HPP
#define NIROM_MODAL_HPP

#include <nirom/core.hpp>

namespace nirom
{

///
/// A = V diag(values) V^{-1}. partner[p] is the index of the conjugate
/// eigenvalue of values[p] (p itself for real eigenvalues). Paired columns
/// of V are exact conjugates and paired eigenvalues exact conjugates.
///
struct ModalDecomposition
{
    VectorXcd values;
    MatrixXcd vectors;
    MatrixXcd inverse;
    std::vector<Index> partner;
    double condition = 1.0; ///< 2-norm condition number of the eigenvector matrix
};

/// Modal decomposition of a real matrix.
ModalDecomposition modal_decomposition(const MatrixXd& A);

///
/// Modal decomposition of a complex matrix whose spectrum is expected to be
/// closed under conjugation. Eigenvalues that find no conjugate partner
/// within pair_tol (relative) raise NotConjugateClosed unless they are real.
///
ModalDecomposition modal_decomposition(const MatrixXcd& A, double pair_tol = 1e-6);

///
/// Real realization of a complex descriptor model whose transfer function
/// has real coefficients. Models that are already real are returned with
/// their imaginary parts dropped. Otherwise the model is brought to explicit
/// modal form, each state is rescaled so that conjugate modes carry
/// conjugate input rows, and every conjugate pair (a +- bi) is mapped to the
/// real block [[a, b], [-b, a]]. The result has E = I.
///
/// Throws NotConjugateClosed when imaginary residues above 1e-6 remain and
/// SingularE when E is not invertible.
///
Realization realify(const ComplexRealization& model);

/// Maximum absolute imaginary part over all matrices of the model.
double max_imag(const ComplexRealization& model);

/// 2-norm condition number via singular values.
double condition_number(const MatrixXd& M);
double condition_number(const MatrixXcd& M);

} // namespace nirom

#endif /* NIROM_MODAL_HPP */
