// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracles shared by the test programs.

#ifndef NIROM_TESTS_SUPPORT_HPP
#define NIROM_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include <nirom/core.hpp>

namespace nirom::test
{

/// Eigenvalues and rank-one residues of E^{-1}A with B and C.
struct PartialFractions
{
    std::vector<Complex> poles;
    std::vector<MatrixXcd> residues; ///< n_z x n_u each
    MatrixXcd D;

    MatrixXcd operator()(Complex z) const
    {
        MatrixXcd H = D;
        for (std::size_t k = 0; k < poles.size(); ++k)
            H += residues[k] / (z - poles[k]);
        return H;
    }
};

inline PartialFractions partial_fractions(const Realization& m)
{
    const MatrixXd A = m.E.partialPivLu().solve(m.A);
    const MatrixXd B = m.E.partialPivLu().solve(m.B);
    Eigen::ComplexEigenSolver<MatrixXcd> es(A.cast<Complex>());
    const MatrixXcd V = es.eigenvectors();
    const MatrixXcd W = V.inverse();
    PartialFractions pf;
    pf.D = m.D.cast<Complex>();
    for (Index k = 0; k < A.rows(); ++k)
    {
        pf.poles.push_back(es.eigenvalues()(k));
        pf.residues.push_back((m.C.cast<Complex>() * V.col(k)) * (W.row(k) * B.cast<Complex>()));
    }
    return pf;
}

inline double rel_diff(const MatrixXcd& a, const MatrixXcd& b)
{
    const double scale = std::max({1e-300, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

inline double rel_diff(const MatrixXd& a, const MatrixXd& b)
{
    const double scale = std::max({1e-300, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

/// n random points on the unit circle.
inline std::vector<Complex> circle_points(int n, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::vector<Complex> z;
    for (int i = 0; i < n; ++i)
        z.push_back(std::polar(1.0, ang(gen)));
    return z;
}

inline MatrixXd random_matrix(Index r, Index c, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    MatrixXd M(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i)
            M(i, j) = nd(gen);
    return M;
}

///
/// Explicit system with the given poles (conjugates added for complex
/// entries with positive imaginary part), hidden by a random orthogonal
/// similarity.
///
inline Realization system_with_poles(const std::vector<Complex>& poles, Index n_z,
                                     std::uint64_t seed)
{
    Index n = 0;
    for (const auto& p : poles)
        n += p.imag() > 0.0 ? 2 : 1;
    MatrixXd blk = MatrixXd::Zero(n, n);
    Index at = 0;
    for (const auto& p : poles)
    {
        if (p.imag() > 0.0)
        {
            blk(at, at) = p.real();
            blk(at, at + 1) = p.imag();
            blk(at + 1, at) = -p.imag();
            blk(at + 1, at + 1) = p.real();
            at += 2;
        }
        else
        {
            blk(at, at) = p.real();
            at += 1;
        }
    }
    Eigen::HouseholderQR<MatrixXd> qr(random_matrix(n, n, seed));
    const MatrixXd Q = qr.householderQ();
    return Realization(MatrixXd::Identity(n, n), Q * blk * Q.transpose(),
                       random_matrix(n, 1, seed + 1), random_matrix(n_z, n, seed + 2));
}

inline MatrixXd white_noise(Index rows, Index N, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MatrixXd U(rows, N);
    for (Index k = 0; k < N; ++k)
        for (Index i = 0; i < rows; ++i)
            U(i, k) = u(gen);
    return U;
}

} // namespace nirom::test

#endif /* NIROM_TESTS_SUPPORT_HPP */
