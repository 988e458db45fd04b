// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/modal.hpp>

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace nirom
{

namespace
{

template <typename M>
double cond_impl(const M& m)
{
    if (m.size() == 0)
        return 1.0;
    const VectorXd s = Eigen::BDCSVD<M>(m).singularValues();
    const double smin = s(s.size() - 1);
    return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

// Assigns conjugate partners. Returns false if some eigenvalue is neither
// real nor matched within tol.
bool pair_conjugates(VectorXcd& values, std::vector<Index>& partner, double tol)
{
    const Index n = values.size();
    double scale = 1.0;
    for (Index i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(values(i)));
    const double abs_tol = tol * scale;

    partner.assign(static_cast<std::size_t>(n), -1);
    bool ok = true;
    for (Index p = 0; p < n; ++p)
    {
        if (partner[static_cast<std::size_t>(p)] >= 0)
            continue;
        const Complex target = std::conj(values(p));
        Index best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Index q = p + 1; q < n; ++q)
        {
            if (partner[static_cast<std::size_t>(q)] >= 0)
                continue;
            const double d = std::abs(values(q) - target);
            if (d < best_dist)
            {
                best_dist = d;
                best = q;
            }
        }
        const double self_dist = 2.0 * std::abs(values(p).imag());
        if (self_dist <= best_dist && self_dist <= abs_tol)
        {
            partner[static_cast<std::size_t>(p)] = p;
            values(p) = Complex(values(p).real(), 0.0);
        }
        else if (best >= 0 && best_dist <= abs_tol)
        {
            partner[static_cast<std::size_t>(p)] = best;
            partner[static_cast<std::size_t>(best)] = p;
            const Complex avg = 0.5 * (values(p) + std::conj(values(best)));
            values(p) = avg;
            values(best) = std::conj(avg);
        }
        else
        {
            partner[static_cast<std::size_t>(p)] = p;
            ok = false;
        }
    }
    return ok;
}

void finish(ModalDecomposition& md)
{
    Eigen::FullPivLU<MatrixXcd> lu(md.vectors);
    md.inverse = lu.inverse();
    md.condition = cond_impl(md.vectors);
}

} // namespace

double condition_number(const MatrixXd& M) { return cond_impl(M); }
double condition_number(const MatrixXcd& M) { return cond_impl(M); }

ModalDecomposition modal_decomposition(const MatrixXd& A)
{
    ModalDecomposition md;
    if (A.rows() == 0)
    {
        md.values.resize(0);
        md.vectors.resize(0, 0);
        md.inverse.resize(0, 0);
        return md;
    }
    Eigen::EigenSolver<MatrixXd> es(A, true);
    require(es.info() == Eigen::Success, ErrorCode::DefectiveSpectrum,
            "eigenvalue iteration did not converge");
    md.values = es.eigenvalues();
    md.vectors = es.eigenvectors();
    pair_conjugates(md.values, md.partner, 1e-8);
    for (Index p = 0; p < md.values.size(); ++p)
    {
        const Index q = md.partner[static_cast<std::size_t>(p)];
        if (q == p)
        {
            md.vectors.col(p) = md.vectors.col(p).real().cast<Complex>();
        }
        else if (q > p)
        {
            if (md.values(p).imag() < 0.0)
            {
                md.values(p) = std::conj(md.values(p));
                md.values(q) = std::conj(md.values(q));
                md.vectors.col(p) = md.vectors.col(q).eval();
            }
            md.vectors.col(q) = md.vectors.col(p).conjugate();
        }
    }
    finish(md);
    return md;
}

ModalDecomposition modal_decomposition(const MatrixXcd& A, double pair_tol)
{
    ModalDecomposition md;
    if (A.rows() == 0)
    {
        md.values.resize(0);
        md.vectors.resize(0, 0);
        md.inverse.resize(0, 0);
        return md;
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(A, true);
    require(es.info() == Eigen::Success, ErrorCode::DefectiveSpectrum,
            "eigenvalue iteration did not converge");
    md.values = es.eigenvalues();
    md.vectors = es.eigenvectors();
    const bool closed = pair_conjugates(md.values, md.partner, pair_tol);
    require(closed, ErrorCode::NotConjugateClosed, "spectrum is not closed under conjugation");
    // Put the eigenvalue with positive imaginary part first in every pair.
    for (Index p = 0; p < md.values.size(); ++p)
    {
        const Index q = md.partner[static_cast<std::size_t>(p)];
        if (q > p && md.values(p).imag() < 0.0)
        {
            std::swap(md.values(p), md.values(q));
            md.vectors.col(p).swap(md.vectors.col(q));
        }
    }
    finish(md);
    return md;
}

double max_imag(const ComplexRealization& model)
{
    auto mi = [](const MatrixXcd& m) { return m.size() ? m.imag().cwiseAbs().maxCoeff() : 0.0; };
    return std::max({mi(model.E), mi(model.A), mi(model.B), mi(model.C), mi(model.D)});
}

Realization realify(const ComplexRealization& model)
{
    const double scale = std::max({1.0, model.E.norm(), model.A.norm(), model.B.norm(),
                                   model.C.norm(), model.D.norm()});
    if (max_imag(model) <= 1e-13 * scale)
    {
        Realization real(model.E.real(), model.A.real(), model.B.real(), model.C.real(),
                         model.D.real(), model.delay);
        return real;
    }

    const Index n = model.order();
    Eigen::PartialPivLU<MatrixXcd> lu(model.E);
    const double econd = condition_number(model.E);
    require(econd < 1e12, ErrorCode::SingularE,
            "E is numerically singular (condition " + std::to_string(econd) + ")");
    const MatrixXcd A = lu.solve(model.A);
    const MatrixXcd B = lu.solve(model.B);

    const ModalDecomposition md = modal_decomposition(A);
    require(md.condition < 1e12, ErrorCode::DefectiveSpectrum,
            "eigenvector matrix is too ill-conditioned for a modal realification");

    MatrixXcd b = md.inverse * B;        // n x n_u
    MatrixXcd c = model.C * md.vectors;  // n_z x n
    const double tiny = 1e-14 * std::max(1.0, std::max(b.norm(), c.norm()));

    auto largest = [](const auto& v) {
        Index idx = 0;
        v.cwiseAbs().maxCoeff(&idx);
        return idx;
    };

    for (Index p = 0; p < n; ++p)
    {
        const Index q = md.partner[static_cast<std::size_t>(p)];
        if (q == p)
        {
            Complex alpha(1.0, 0.0);
            const Index i = b.cols() ? largest(b.row(p)) : 0;
            if (b.cols() && std::abs(b(p, i)) > tiny)
            {
                alpha = b(p, i) / std::abs(b(p, i));
            }
            else if (c.rows())
            {
                const Index k = largest(c.col(p));
                if (std::abs(c(k, p)) > tiny)
                    alpha = std::abs(c(k, p)) / c(k, p);
            }
            b.row(p) /= alpha;
            c.col(p) *= alpha;
        }
        else if (q > p)
        {
            const Index i = b.cols() ? largest(b.row(p)) : 0;
            Complex alpha(1.0, 0.0);
            if (b.cols() && std::abs(b(p, i)) > tiny && std::abs(b(q, i)) > tiny)
            {
                alpha = b(q, i) / std::conj(b(p, i));
            }
            else if (c.rows())
            {
                const Index k = largest(c.col(p));
                if (std::abs(c(k, p)) > tiny && std::abs(c(k, q)) > tiny)
                    alpha = std::conj(c(k, p)) / c(k, q);
            }
            b.row(q) /= alpha;
            c.col(q) *= alpha;
        }
    }

    // Block-unitary map of each conjugate pair onto a real 2x2 block.
    MatrixXcd J = MatrixXcd::Zero(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    for (Index p = 0; p < n; ++p)
    {
        const Index q = md.partner[static_cast<std::size_t>(p)];
        if (q == p)
        {
            J(p, p) = 1.0;
        }
        else if (q > p)
        {
            J(p, p) = s;
            J(p, q) = Complex(0.0, -s);
            J(q, p) = s;
            J(q, q) = Complex(0.0, s);
        }
    }
    const MatrixXcd Ar = J.adjoint() * md.values.asDiagonal() * J;
    const MatrixXcd Br = J.adjoint() * b;
    const MatrixXcd Cr = c * J;

    const double residual = std::max({Ar.size() ? Ar.imag().cwiseAbs().maxCoeff() : 0.0,
                                      Br.size() ? Br.imag().cwiseAbs().maxCoeff() : 0.0,
                                      Cr.size() ? Cr.imag().cwiseAbs().maxCoeff() : 0.0,
                                      model.D.size() ? model.D.imag().cwiseAbs().maxCoeff() : 0.0});
    const double rscale = std::max({1.0, Ar.norm(), Br.norm(), Cr.norm()});
    require(residual <= 1e-6 * rscale, ErrorCode::NotConjugateClosed,
            "imaginary residue " + std::to_string(residual) + " after realification");

    return Realization(MatrixXd::Identity(n, n), Ar.real(), Br.real(), Cr.real(), model.D.real(),
                       model.delay);
}

} // namespace nirom
