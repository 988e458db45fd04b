// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/stabilize.hpp>

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <nirom/modal.hpp>

namespace nirom
{

StabilizeMode stabilize_mode_from_string(const std::string& s)
{
    if (s == "reflect")
        return StabilizeMode::Reflect;
    if (s == "discard")
        return StabilizeMode::Discard;
    throw Error(ErrorCode::InvalidArgument, "unknown stabilize mode '" + s + "'");
}

std::string to_string(StabilizeMode m)
{
    return m == StabilizeMode::Reflect ? "reflect" : "discard";
}

double spectral_radius(const MatrixXd& A)
{
    if (A.rows() == 0)
        return 0.0;
    Eigen::EigenSolver<MatrixXd> es(A, false);
    require(es.info() == Eigen::Success, ErrorCode::SingularPencil,
            "eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Realization& model)
{
    const Index n = model.order();
    if (n == 0)
        return 0.0;
    if (model.E.isIdentity(0.0))
        return spectral_radius(model.A);

    Eigen::GeneralizedEigenSolver<MatrixXd> ges(model.A, model.E, false);
    require(ges.info() == Eigen::Success, ErrorCode::SingularPencil,
            "QZ iteration did not converge");
    const VectorXcd alphas = ges.alphas();
    const VectorXd betas = ges.betas();
    const double atol = 1e-13 * std::max(1.0, model.A.norm());
    const double btol = 1e-13 * std::max(1.0, model.E.norm());
    double rho = 0.0;
    for (Index i = 0; i < n; ++i)
    {
        const double a = std::abs(alphas(i));
        const double b = std::abs(betas(i));
        if (b <= btol)
        {
            require(a > atol, ErrorCode::SingularPencil, "pencil (E, A) is singular");
            return std::numeric_limits<double>::infinity();
        }
        rho = std::max(rho, a / b);
    }
    return rho;
}

bool is_stable(const Realization& model, double margin)
{
    return spectral_radius(model) <= 1.0 - margin;
}

Index reorder_schur(MatrixXcd& T, MatrixXcd& U, const std::function<bool(Complex)>& select)
{
    const Index n = T.rows();
    Index pos = 0;
    for (Index j = 0; j < n; ++j)
    {
        if (!select(T(j, j)))
            continue;
        for (Index k = j; k > pos; --k)
        {
            // Swap diagonal entries k-1 and k with a Givens-type rotation whose
            // first column is the eigenvector of the trailing entry.
            const Index i = k - 1;
            const Complex a = T(i, i);
            const Complex c = T(k, k);
            const Complex x1 = T(i, k);
            const Complex x2 = c - a;
            const double nx = std::sqrt(std::norm(x1) + std::norm(x2));
            if (nx == 0.0)
                continue;
            Eigen::Matrix2cd G;
            G << x1 / nx, -std::conj(x2) / nx, x2 / nx, std::conj(x1) / nx;
            T.middleRows(i, 2) = (G.adjoint() * T.middleRows(i, 2)).eval();
            T.middleCols(i, 2) = (T.middleCols(i, 2) * G).eval();
            U.middleCols(i, 2) = (U.middleCols(i, 2) * G).eval();
            T(k, i) = 0.0;
        }
        ++pos;
    }
    return pos;
}

MatrixXcd stable_invariant_subspace(const MatrixXd& A, double radius)
{
    Eigen::ComplexSchur<MatrixXcd> schur(A.cast<Complex>(), true);
    require(schur.info() == Eigen::Success, ErrorCode::DefectiveSpectrum,
            "Schur iteration did not converge");
    MatrixXcd T = schur.matrixT();
    MatrixXcd U = schur.matrixU();
    const Index k = reorder_schur(T, U, [radius](Complex z) { return std::abs(z) <= radius; });
    return U.leftCols(k);
}

namespace
{

// Orthonormal real basis of a conjugation-closed complex subspace.
MatrixXd real_basis(const MatrixXcd& Q)
{
    const Index k = Q.cols();
    if (k == 0)
        return MatrixXd(Q.rows(), 0);
    MatrixXd stacked(Q.rows(), 2 * k);
    stacked << Q.real(), Q.imag();
    Eigen::BDCSVD<MatrixXd> svd(stacked, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(k);
}

struct Explicit
{
    MatrixXd A;
    MatrixXd B;
};

Explicit explicit_form(const Realization& model)
{
    if (model.E.isIdentity(0.0))
        return {model.A, model.B};
    const double econd = condition_number(model.E);
    require(econd < 1e12, ErrorCode::SingularE,
            "E is numerically singular (condition " + std::to_string(econd) + ")");
    Eigen::PartialPivLU<MatrixXd> lu(model.E);
    return {lu.solve(model.A), lu.solve(model.B)};
}

StabilizeResult discard_unstable(const Realization& model, const Explicit& ex, double bound,
                                 StabilizeResult res)
{
    const Index n = ex.A.rows();
    const MatrixXd Qr = real_basis(stable_invariant_subspace(ex.A, bound));
    const MatrixXd Wr = real_basis(stable_invariant_subspace(ex.A.transpose(), bound));
    const Index k = Qr.cols();
    require(Wr.cols() == k, ErrorCode::DefectiveSpectrum,
            "left and right stable subspaces differ in dimension");

    MatrixXd As(k, k);
    MatrixXd Bs(k, model.n_inputs());
    if (k > 0)
    {
        Eigen::PartialPivLU<MatrixXd> M(Wr.transpose() * Qr);
        As = M.solve(Wr.transpose() * ex.A * Qr);
        Bs = M.solve(Wr.transpose() * ex.B);
    }
    res.model = Realization(MatrixXd::Identity(k, k), As, Bs, model.C * Qr, model.D, model.delay);
    res.discarded = n - k;
    res.changed = true;
    res.radius_after = spectral_radius(res.model.A);
    return res;
}

} // namespace

StabilizeResult stabilize(const Realization& model, StabilizeMode mode, double margin)
{
    require(margin >= 0.0 && margin < 1.0, ErrorCode::InvalidArgument,
            "margin must lie in [0, 1)");
    StabilizeResult res;
    res.model = model;
    if (model.order() == 0)
        return res;

    const Explicit ex = explicit_form(model);
    const double bound = 1.0 - margin;
    res.radius_before = spectral_radius(ex.A);
    res.radius_after = res.radius_before;
    if (res.radius_before <= bound)
        return res;

    if (mode == StabilizeMode::Discard)
        return discard_unstable(model, ex, bound, std::move(res));

    const ModalDecomposition md = modal_decomposition(ex.A);
    if (md.condition > 1e12)
    {
        res.warnings.push_back("DefectiveSpectrum: eigenvector condition " +
                               std::to_string(md.condition) + ", fell back to discard");
        return discard_unstable(model, ex, bound, std::move(res));
    }

    // Clamped magnitudes are pulled inward by a few ulps-worth if rounding in
    // V diag V^{-1} would otherwise leave the radius just above the bound.
    double clamp = bound;
    for (int attempt = 0; attempt < 6; ++attempt)
    {
        VectorXcd values = md.values;
        Index moved = 0;
        for (Index i = 0; i < values.size(); ++i)
        {
            const double mag = std::abs(values(i));
            if (mag > bound)
            {
                const double target = std::min(1.0 / mag, clamp);
                values(i) *= target / mag;
                ++moved;
            }
        }
        MatrixXd A = (md.vectors * values.asDiagonal() * md.inverse).real();
        const double rho = spectral_radius(A);
        if (rho <= bound || attempt == 5)
        {
            const Index n = A.rows();
            res.model = Realization(MatrixXd::Identity(n, n), std::move(A), ex.B, model.C, model.D,
                                    model.delay);
            res.reflected = moved;
            res.changed = true;
            res.radius_after = rho;
            if (rho > bound)
                res.warnings.push_back("reflected radius " + std::to_string(rho) +
                                       " still above the bound after rounding");
            return res;
        }
        clamp = bound * (1.0 - std::ldexp(1.0, -40 + 4 * attempt));
    }
    return res;
}

} // namespace nirom
