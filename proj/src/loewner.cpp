// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

#include <nirom/loewner.hpp>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include <nirom/transfer.hpp>

namespace nirom
{

PointSplit select_points(Index count, double omega_min, double omega_max)
{
    require(omega_min > 0.0 && omega_min < omega_max && omega_max <= M_PI,
            ErrorCode::BadFrequencyRange, "need 0 < omega_min < omega_max <= pi");
    require(count >= 4 && count % 4 == 0, ErrorCode::InvalidArgument,
            "point count must be a positive multiple of 4");
    const Index m = count / 2; // number of frequencies = number of conjugate pairs
    const double lo = std::log10(omega_min);
    const double hi = std::log10(omega_max);
    PointSplit split{VectorXcd(m), VectorXcd(m)};
    Index nl = 0;
    Index nr = 0;
    for (Index k = 0; k < m; ++k)
    {
        const double t = m > 1 ? static_cast<double>(k) / static_cast<double>(m - 1) : 0.0;
        const double omega = std::pow(10.0, lo + t * (hi - lo));
        const Complex z = std::polar(1.0, omega);
        VectorXcd& side = (k % 2 == 0) ? split.left : split.right;
        Index& pos = (k % 2 == 0) ? nl : nr;
        side(pos++) = z;
        side(pos++) = std::conj(z);
    }
    return split;
}

DirectionScheme direction_scheme_from_string(const std::string& s)
{
    if (s == "cycled")
        return DirectionScheme::Cycled;
    if (s == "random")
        return DirectionScheme::Random;
    throw Error(ErrorCode::InvalidArgument, "unknown direction scheme '" + s + "'");
}

std::string to_string(DirectionScheme s)
{
    return s == DirectionScheme::Cycled ? "cycled" : "random";
}

VectorXcd cycled_direction(Index j, Index n)
{
    require(j >= 1 && n >= 1, ErrorCode::InvalidArgument, "direction index is 1-based");
    VectorXcd e = VectorXcd::Zero(n);
    e((j - 1) % n) = 1.0;
    return e;
}

namespace
{

// partner[k] is the index of conj(points[k]); -1 when absent.
std::vector<Index> conjugate_partners(const VectorXcd& points)
{
    const Index m = points.size();
    std::vector<Index> partner(static_cast<std::size_t>(m), -1);
    for (Index p = 0; p < m; ++p)
    {
        if (partner[static_cast<std::size_t>(p)] >= 0)
            continue;
        const double tol = 1e-12 * std::max(1.0, std::abs(points(p)));
        if (std::abs(points(p).imag()) <= tol)
        {
            partner[static_cast<std::size_t>(p)] = p;
            continue;
        }
        for (Index q = p + 1; q < m; ++q)
        {
            if (partner[static_cast<std::size_t>(q)] < 0 &&
                std::abs(points(q) - std::conj(points(p))) <= tol)
            {
                partner[static_cast<std::size_t>(p)] = q;
                partner[static_cast<std::size_t>(q)] = p;
                break;
            }
        }
    }
    return partner;
}

// Directions for each point: one direction per conjugate pair, shared by both members.
MatrixXcd directions(const VectorXcd& points, Index n, const DirectionOptions& opt,
                     std::mt19937_64& gen)
{
    const std::vector<Index> partner = conjugate_partners(points);
    MatrixXcd D(n, points.size());
    std::normal_distribution<double> normal;
    Index pair = 0;
    for (Index p = 0; p < points.size(); ++p)
    {
        const Index q = partner[static_cast<std::size_t>(p)];
        if (q >= 0 && q < p)
        {
            D.col(p) = D.col(q);
            continue;
        }
        ++pair;
        if (opt.scheme == DirectionScheme::Cycled)
        {
            D.col(p) = cycled_direction(pair, n);
        }
        else
        {
            VectorXd v(n);
            for (Index i = 0; i < n; ++i)
                v(i) = normal(gen);
            D.col(p) = (v / v.norm()).cast<Complex>();
        }
    }
    return D;
}

template <typename Evaluate>
LoewnerData sample_with(Evaluate&& H, Index n_z, Index n_u, const PointSplit& points,
                        const DirectionOptions& opt)
{
    require(points.left.size() == points.right.size(), ErrorCode::ShapeMismatch,
            "left and right point sets must have the same size");
    std::mt19937_64 gen(opt.seed);
    LoewnerData d;
    d.mu = points.left;
    d.lambda = points.right;
    d.ell = directions(points.left, n_z, opt, gen);
    d.r = directions(points.right, n_u, opt, gen);
    const Index m = points.left.size();
    d.V.resize(m, n_u);
    d.W.resize(n_z, m);
    for (Index j = 0; j < m; ++j)
    {
        d.V.row(j) = d.ell.col(j).adjoint() * H(d.mu(j));
    }
    for (Index i = 0; i < m; ++i)
    {
        d.W.col(i) = H(d.lambda(i)) * d.r.col(i);
    }
    return d;
}

MatrixXcd pair_transform(const VectorXcd& points)
{
    const std::vector<Index> partner = conjugate_partners(points);
    const Index m = points.size();
    const double s = 1.0 / std::sqrt(2.0);
    MatrixXcd J = MatrixXcd::Zero(m, m);
    for (Index p = 0; p < m; ++p)
    {
        const Index q = partner[static_cast<std::size_t>(p)];
        require(q >= 0, ErrorCode::NotConjugateClosed,
                "interpolation points are not closed under conjugation");
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
    return J;
}

Index count_rank(const VectorXd& sigma, double tol)
{
    if (sigma.size() == 0 || sigma(0) == 0.0)
        return 0;
    Index n = 0;
    while (n < sigma.size() && sigma(n) >= tol * sigma(0))
        ++n;
    return n;
}

// Shared SVD-based projection for real or complex pencils.
template <typename M>
struct Projection
{
    M Y;
    M X;
    LoewnerReduction info;
};

template <typename M>
Projection<M> project(const M& L, const M& Ls, const ReductionTarget& target)
{
    const Index m = L.rows();
    M row(m, 2 * m);
    row << L, Ls;
    M col(2 * m, m);
    col << L, Ls;
    Eigen::BDCSVD<M> svd_row(row, Eigen::ComputeThinU);
    Eigen::BDCSVD<M> svd_col(col, Eigen::ComputeThinV);

    Projection<M> p;
    p.info.singular_values_row = svd_row.singularValues();
    p.info.singular_values_col = svd_col.singularValues();
    p.info.rank_row = count_rank(p.info.singular_values_row, target.rank_tol);
    p.info.rank_col = count_rank(p.info.singular_values_col, target.rank_tol);
    p.info.numerical_rank = p.info.rank_row;
    if (!target.order)
    {
        require(p.info.rank_row == p.info.rank_col, ErrorCode::RankAmbiguity,
                "rank of [L, Ls] is " + std::to_string(p.info.rank_row) + " but rank of [L; Ls] is " +
                    std::to_string(p.info.rank_col));
    }
    const Index r = target.order.value_or(p.info.numerical_rank);
    require(r >= 0 && r <= m, ErrorCode::TargetOrderTooLarge,
            "target order " + std::to_string(r) + " exceeds the " + std::to_string(m) +
                " available interpolation points per side");
    p.Y = svd_row.matrixU().leftCols(r);
    p.X = svd_col.matrixV().leftCols(r);
    return p;
}

} // namespace

LoewnerData sample_tangential(const Realization& fom, const PointSplit& points,
                              const DirectionOptions& dirs)
{
    const Realization plain = fom.without_delay();
    return sample_with([&](Complex z) { return eval_transfer(plain, z); }, fom.n_outputs(),
                       fom.n_inputs(), points, dirs);
}

LoewnerData sample_tangential(const BlockDiagonalRealization& fom, const PointSplit& points,
                              const DirectionOptions& dirs)
{
    return sample_with([&](Complex z) { return eval_transfer(fom, z, false); }, fom.n_outputs(),
                       fom.n_inputs(), points, dirs);
}

LoewnerPencil build_loewner(const LoewnerData& data)
{
    const Index m = data.size();
    require(data.lambda.size() == m && data.V.rows() == m && data.W.cols() == m &&
                data.ell.cols() == m && data.r.cols() == m,
            ErrorCode::ShapeMismatch, "inconsistent Loewner data sizes");
    LoewnerPencil p{MatrixXcd(m, m), MatrixXcd(m, m), data};
    // v_j^H r_i and l_j^H w_i for all pairs.
    const MatrixXcd VR = data.V * data.r;
    const MatrixXcd LW = data.ell.adjoint() * data.W;
    for (Index j = 0; j < m; ++j)
    {
        for (Index i = 0; i < m; ++i)
        {
            const Complex diff = data.mu(j) - data.lambda(i);
            require(std::abs(diff) >= 1e-14, ErrorCode::CoincidentPoints,
                    "left and right interpolation points coincide");
            p.L(j, i) = (VR(j, i) - LW(j, i)) / diff;
            p.Ls(j, i) = (data.mu(j) * VR(j, i) - data.lambda(i) * LW(j, i)) / diff;
        }
    }
    return p;
}

ComplexRealization loewner_realize(const LoewnerPencil& pencil)
{
    ComplexRealization raw(-pencil.L, -pencil.Ls, pencil.data.V, pencil.data.W);
    require(is_regular(raw), ErrorCode::SingularRawPencil,
            "raw Loewner pencil is singular; the data is redundant or insufficient");
    return raw;
}

std::pair<ComplexRealization, LoewnerReduction>
reduce_loewner_complex(const LoewnerPencil& pencil, const ReductionTarget& target)
{
    const auto p = project<MatrixXcd>(pencil.L, pencil.Ls, target);
    ComplexRealization model(-(p.Y.adjoint() * pencil.L * p.X), -(p.Y.adjoint() * pencil.Ls * p.X),
                             p.Y.adjoint() * pencil.data.V, pencil.data.W * p.X);
    LoewnerReduction info = p.info;
    info.Y = p.Y;
    info.X = p.X;
    return {std::move(model), std::move(info)};
}

std::pair<Realization, LoewnerReduction> reduce_loewner(const LoewnerPencil& pencil,
                                                        const ReductionTarget& target)
{
    const MatrixXcd JL = pair_transform(pencil.data.mu);
    const MatrixXcd JR = pair_transform(pencil.data.lambda);
    const MatrixXcd Lc = JL.adjoint() * pencil.L * JR;
    const MatrixXcd Lsc = JL.adjoint() * pencil.Ls * JR;
    const MatrixXcd Vc = JL.adjoint() * pencil.data.V;
    const MatrixXcd Wc = pencil.data.W * JR;

    auto imag_ratio = [](const MatrixXcd& M) {
        if (M.size() == 0)
            return 0.0;
        const double mag = std::max(M.cwiseAbs().maxCoeff(), 1e-300);
        return M.imag().cwiseAbs().maxCoeff() / mag;
    };
    const double leak = std::max({imag_ratio(Lc), imag_ratio(Lsc), imag_ratio(Vc), imag_ratio(Wc)});
    require(leak <= 1e-6, ErrorCode::NotConjugateClosed,
            "directions or samples are not conjugate-consistent");

    const MatrixXd L = Lc.real();
    const MatrixXd Ls = Lsc.real();
    const auto p = project<MatrixXd>(L, Ls, target);
    Realization model(-(p.Y.transpose() * L * p.X), -(p.Y.transpose() * Ls * p.X),
                      p.Y.transpose() * Vc.real(), Wc.real() * p.X);
    LoewnerReduction info = p.info;
    info.Y = JL * p.Y.cast<Complex>();
    info.X = JR * p.X.cast<Complex>();
    return {std::move(model), std::move(info)};
}

namespace
{

template <typename Scalar>
double residual_impl(const DescriptorRealization<Scalar>& model, const LoewnerData& data)
{
    double scale = std::max(data.V.cwiseAbs().maxCoeff(), data.W.cwiseAbs().maxCoeff());
    scale = std::max(scale, 1e-300);
    double worst = 0.0;
    for (Index j = 0; j < data.size(); ++j)
    {
        const MatrixXcd H = eval_transfer(model, data.mu(j));
        worst = std::max(worst, (data.ell.col(j).adjoint() * H - data.V.row(j)).norm());
    }
    for (Index i = 0; i < data.size(); ++i)
    {
        const MatrixXcd H = eval_transfer(model, data.lambda(i));
        worst = std::max(worst, (H * data.r.col(i) - data.W.col(i)).norm());
    }
    return worst / scale;
}

} // namespace

double interpolation_residual(const ComplexRealization& model, const LoewnerData& data)
{
    return residual_impl(model, data);
}

double interpolation_residual(const Realization& model, const LoewnerData& data)
{
    return residual_impl(model, data);
}

} // namespace nirom
