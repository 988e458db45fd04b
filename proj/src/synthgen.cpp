// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/synthgen.hpp>

#include <cmath>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <nirom/modal.hpp>

namespace nirom
{

namespace
{

MatrixXd gaussian(Index rows, Index cols, std::mt19937_64& gen)
{
    std::normal_distribution<double> normal;
    MatrixXd M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            M(i, j) = normal(gen);
    return M;
}

MatrixXd random_orthogonal(Index n, std::mt19937_64& gen)
{
    Eigen::HouseholderQR<MatrixXd> qr(gaussian(n, n, gen));
    MatrixXd Q = qr.householderQ();
    // Sign fix so the draw is the Haar measure.
    const VectorXd d = qr.matrixQR().diagonal();
    for (Index i = 0; i < n; ++i)
    {
        if (d(i) < 0.0)
            Q.col(i) *= -1.0;
    }
    return Q;
}

// Real block-diagonal matrix with the drawn spectrum. Poles closer than
// 0.05 to an earlier one are redrawn; false when that keeps failing.
bool draw_spectrum(Index q, double rho, std::mt19937_64& gen, MatrixXd& block,
                   std::vector<Complex>& poles)
{
    std::uniform_real_distribution<double> mag(0.3 * rho, 0.98 * rho);
    std::uniform_real_distribution<double> angle(0.15, M_PI - 0.15);
    std::bernoulli_distribution coin(0.5);
    auto separated = [&](Complex z) {
        for (const Complex& p : poles)
        {
            if (std::abs(p - z) < 0.05)
                return false;
        }
        return std::abs(z.imag()) == 0.0 || std::abs(2.0 * z.imag()) >= 0.05;
    };
    block = MatrixXd::Zero(q, q);
    poles.clear();
    Index at = 0;
    while (at < q)
    {
        const bool pair = q - at >= 2 && coin(gen);
        Complex z;
        int tries = 0;
        do
        {
            if (++tries > 1000)
                return false;
            const double m = mag(gen);
            z = pair ? std::polar(m, angle(gen)) : Complex(coin(gen) ? m : -m, 0.0);
        } while (!separated(z) || (pair && !separated(std::conj(z))));
        if (pair)
        {
            block(at, at) = z.real();
            block(at, at + 1) = z.imag();
            block(at + 1, at) = -z.imag();
            block(at + 1, at + 1) = z.real();
            poles.push_back(z);
            poles.push_back(std::conj(z));
            at += 2;
        }
        else
        {
            block(at, at) = z.real();
            poles.push_back(z);
            at += 1;
        }
    }
    return true;
}

// Every mode must be visible from the input and at the output.
bool well_conditioned_residues(const Realization& sys)
{
    const ModalDecomposition md = modal_decomposition(sys.A);
    if (md.condition > 1e8)
        return false;
    const MatrixXcd b = md.inverse * sys.B.cast<Complex>();
    const MatrixXcd c = sys.C.cast<Complex>() * md.vectors;
    double top = 0.0;
    VectorXd weight(sys.order());
    for (Index i = 0; i < sys.order(); ++i)
    {
        weight(i) = b.row(i).norm() * c.col(i).norm();
        top = std::max(top, weight(i));
    }
    return top > 0.0 && weight.minCoeff() >= 1e-2 * top;
}

} // namespace

Realization make_random_system(Index q, Index n_z, std::uint64_t seed, double rho, Index n_u)
{
    require(q >= 0 && n_z >= 1 && n_u >= 1, ErrorCode::InvalidArgument,
            "order must be non-negative and dimensions positive");
    require(rho > 0.0 && rho < 1.0, ErrorCode::InvalidArgument, "rho must lie in (0, 1)");
    if (q == 0)
        return Realization::empty(n_z, n_u);

    std::mt19937_64 gen(seed);
    for (int attempt = 0; attempt < 10; ++attempt)
    {
        MatrixXd block;
        std::vector<Complex> poles;
        if (!draw_spectrum(q, rho, gen, block, poles))
            continue;
        const MatrixXd Q = random_orthogonal(q, gen);
        Realization sys(MatrixXd::Identity(q, q), Q * block * Q.transpose(), gaussian(q, n_u, gen),
                        gaussian(n_z, q, gen));
        if (well_conditioned_residues(sys))
            return sys;
    }
    throw Error(ErrorCode::DegenerateDraw,
                "no admissible system after 10 draws (seed " + std::to_string(seed) + ")");
}

InferredModel make_random_bilinear(Index q, Index n_z, std::uint64_t seed, double rho)
{
    const Realization lin = make_random_system(q, n_z, seed, rho, 1);
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
    InferredModel m = InferredModel::linear(lin.A, lin.B, lin.C, lin.D);
    m.model_class = ModelClass::Bilinear;
    if (q > 0)
    {
        const double anorm = Eigen::JacobiSVD<MatrixXd>(lin.A).singularValues()(0);
        MatrixXd Nm = gaussian(q, q, gen);
        const double nnorm = Eigen::JacobiSVD<MatrixXd>(Nm).singularValues()(0);
        m.N = Nm * (0.5 * (1.0 - anorm) / nnorm);
        m.F = 0.5 * gaussian(n_z, q, gen);
    }
    m.validate();
    return m;
}

//------------------------------------------------------------------------------
// Plume
//------------------------------------------------------------------------------

double PlumeConfig::cfl() const
{
    const double dt = h / static_cast<double>(substeps);
    return (std::abs(wind_x) + std::abs(wind_y)) * dt / dx + 4.0 * kappa * dt / (dx * dx);
}

void PlumeConfig::enforce_cfl()
{
    require(h > 0.0 && dx > 0.0 && kappa >= 0.0, ErrorCode::InvalidArgument,
            "h and dx must be positive, kappa non-negative");
    substeps = std::max<Index>(substeps, 1);
    while (cfl() > 0.9)
        ++substeps;
}

PlumeConfig PlumeConfig::rough_mesh()
{
    PlumeConfig c;
    c.sources = {{40, 30, 1.0}, {42, 36, 1.0}, {45, 33, 1.0}, {48, 39, 1.0}};
    for (Index i : {55, 70, 85, 100})
    {
        for (Index j : {30, 40, 55, 70})
            c.probes.push_back({i, j});
    }
    c.enforce_cfl();
    return c;
}

PlumeResult make_plume(const PlumeConfig& cfg)
{
    require(cfg.nx >= 2 && cfg.ny >= 2 && cfg.N >= 2 && cfg.substeps >= 1, ErrorCode::InvalidArgument,
            "grid needs at least 2x2 cells, N >= 2 and substeps >= 1");
    require(cfg.h > 0.0 && cfg.dx > 0.0 && cfg.kappa >= 0.0, ErrorCode::InvalidArgument,
            "h and dx must be positive, kappa non-negative");
    require(cfg.cfl() <= 0.9, ErrorCode::CFLViolation,
            "CFL number " + std::to_string(cfg.cfl()) + " exceeds 0.9");
    require(!cfg.probes.empty(), ErrorCode::InvalidArgument, "at least one probe is required");
    auto inside = [&](Index i, Index j) { return i >= 0 && i < cfg.nx && j >= 0 && j < cfg.ny; };
    for (const auto& s : cfg.sources)
        require(inside(s.i, s.j), ErrorCode::InvalidArgument, "source outside the grid");
    for (const auto& p : cfg.probes)
        require(inside(p.i, p.j), ErrorCode::InvalidArgument, "probe outside the grid");

    const Index nx = cfg.nx;
    const Index ny = cfg.ny;
    const double dt = cfg.h / static_cast<double>(cfg.substeps);
    const double ax = dt / cfg.dx;
    const double dif = cfg.kappa * dt / (cfg.dx * cfg.dx);
    const double wxp = std::max(cfg.wind_x, 0.0), wxm = std::min(cfg.wind_x, 0.0);
    const double wyp = std::max(cfg.wind_y, 0.0), wym = std::min(cfg.wind_y, 0.0);
    const double area = cfg.dx * cfg.dx;

    MatrixXd c = MatrixXd::Zero(nx, ny);
    MatrixXd next(nx, ny);
    auto at = [&](Index i, Index j) -> double {
        if (cfg.periodic)
            return c((i + nx) % nx, (j + ny) % ny);
        return inside(i, j) ? c(i, j) : 0.0;
    };

    PlumeResult res;
    MatrixXd Z(static_cast<Index>(cfg.probes.size()), cfg.N);
    res.mass.resize(cfg.N);
    res.min_concentration = 0.0;
    for (Index k = 0; k < cfg.N; ++k)
    {
        for (Index s = 0; s < cfg.substeps; ++s)
        {
            for (Index j = 0; j < ny; ++j)
            {
                for (Index i = 0; i < nx; ++i)
                {
                    const double cc = c(i, j);
                    const double w = at(i - 1, j), e = at(i + 1, j);
                    const double so = at(i, j - 1), no = at(i, j + 1);
                    // Face fluxes in conservative upwind form.
                    const double fe = wxp * cc + wxm * e;
                    const double fw = wxp * w + wxm * cc;
                    const double fn = wyp * cc + wym * no;
                    const double fs = wyp * so + wym * cc;
                    next(i, j) = cc - ax * (fe - fw + fn - fs) +
                                 dif * (e + w + no + so - 4.0 * cc);
                }
            }
            for (const auto& src : cfg.sources)
                next(src.i, src.j) += src.flux * dt / area;
            c.swap(next);
        }
        for (std::size_t p = 0; p < cfg.probes.size(); ++p)
            Z(static_cast<Index>(p), k) = c(cfg.probes[p].i, cfg.probes[p].j);
        res.mass(k) = c.sum() * area;
        res.min_concentration = std::min(res.min_concentration, c.minCoeff());
    }

    const double final_max = Z.col(cfg.N - 1).cwiseAbs().maxCoeff();
    std::vector<Index> tau(cfg.probes.size(), cfg.N - 1);
    if (final_max > 0.0)
    {
        for (Index p = 0; p < Z.rows(); ++p)
        {
            for (Index k = 0; k < cfg.N; ++k)
            {
                if (Z(p, k) > 1e-3 * final_max)
                {
                    tau[static_cast<std::size_t>(p)] = std::min(k, cfg.N - 1);
                    break;
                }
            }
        }
    }
    res.truth_delay = DelayOperator(std::move(tau));
    res.final_field = c;
    res.data = TimeSeriesData(cfg.h, cfg.h, MatrixXd::Ones(1, cfg.N), std::move(Z));
    return res;
}

} // namespace nirom
